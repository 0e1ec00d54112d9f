// cbn - Newton-type solver for conic linear programs over conic boxes
// Copyright 2026 cbn contributors
// Licensed under the Apache License, Version 2.0

#include "cbn/newton.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "cbn/errors.hpp"

namespace cbn {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

double gamma0(const BoxOracle& oracle, std::span<const double> c) {
    return oracle.maximize(c).value;
}

double gamma0(const BoxClp& p) {
    BoxOracle oracle(p.box);
    return gamma0(oracle, p.c);
}

double newton_update(std::span<const double> b, std::span<const double> z,
                     double gamma_prev, double zeta) {
    if (b.size() != z.size()) throw DimensionMismatch("newton_update: b/z size mismatch");
    const double denom = gamma_prev - zeta;
    if (denom < 1e-14)
        throw DivisionGuard("newton_update: gamma_prev - zeta below guard threshold");
    const double d = distance2(b, z);
    return zeta - (d * d) / denom;
}

SolveStatus solve(const BoxClp& p, const SolverConfig& cfg, SolveTrace* trace,
                  const ProgressCallback& progress) {
    if (!(cfg.eps_outer > 0.0))
        throw std::invalid_argument("solve: eps_outer must be positive");
    if (cfg.max_newton == 0) throw std::invalid_argument("solve: max_newton must be positive");

    const auto t_start = Clock::now();
    const BoxOracle oracle(p.box);
    const LiftedSystem sys = lift(p);

    const LinOptResult top = oracle.maximize(p.c);
    double gamma = top.value;
    Vector warm = top.point;

    double eps_mnp = cfg.eps_mnp > 0.0 ? cfg.eps_mnp : cfg.eps_outer / 10.0;
    std::size_t tightenings = 0;

    if (trace) {
        *trace = SolveTrace{};
        trace->gamma0 = gamma;
    }

    SolveStatus status;
    status.kind = SolveKind::IterCap;
    status.gamma = gamma;

    const auto commit = [&](NewtonStepRecord rec) {
        if (trace) {
            trace->steps.push_back(rec);
            trace->total_oracle_calls += rec.oracle_calls;
            trace->total_mnp_iterations += rec.mnp_iterations;
        }
        if (progress) progress(rec);
    };
    const auto finish = [&]() {
        if (trace) {
            trace->final_kind = status.kind;
            trace->total_ms = ms_since(t_start);
        }
        return status;
    };

    std::size_t k = 0;
    while (k < cfg.max_newton) {
        const auto t_step = Clock::now();
        const Vector target = sys.bbar(gamma);

        MnpConfig mnp_cfg;
        mnp_cfg.eps = eps_mnp;
        mnp_cfg.max_major = cfg.mnp_max_major;
        mnp_cfg.minor_factor = cfg.mnp_minor_factor;
        MnpResult mnp = mnp_project(sys, oracle, target, warm, mnp_cfg);

        const std::size_t m = sys.m();
        const std::span<const double> z(mnp.proj.data(), m);
        const double zeta = mnp.proj[m];
        const double dist = mnp.dist;

        NewtonStepRecord rec;
        rec.k = k + 1;
        rec.gamma_prev = gamma;
        rec.zeta = zeta;
        rec.dist = dist;
        rec.mnp_gap = mnp.gap;
        rec.mnp_iterations = mnp.affine_solves;
        rec.oracle_calls = mnp.oracle_calls;

        if (dist < cfg.eps_outer) {
            rec.gamma_next = gamma;
            rec.ms = ms_since(t_step);
            commit(rec);
            status.kind = SolveKind::Optimal;
            status.x = std::move(mnp.x_hat);
            status.gamma = gamma;
            status.residual = dist;
            return finish();
        }

        const double feas_dist = distance2(sys.b(), z);
        if (zeta >= gamma - 1e-14) {
            rec.gamma_next = gamma;
            rec.ms = ms_since(t_step);
            if (feas_dist <= cfg.eps_outer) {
                // The projection meets the constraints; the level zeta it
                // attains is the optimal value.
                commit(rec);
                status.kind = SolveKind::Optimal;
                status.x = std::move(mnp.x_hat);
                status.gamma = zeta;
                status.residual = feas_dist;
                return finish();
            }
            if (tightenings < cfg.max_tightenings) {
                // An inexact projection can fake this signature; confirm it
                // at a tighter inner tolerance before declaring infeasibility.
                ++tightenings;
                eps_mnp /= cfg.tighten_factor;
                warm = std::move(mnp.x_hat);
                continue;  // step not committed
            }
            commit(rec);
            status.kind = SolveKind::Infeasible;
            status.gamma = gamma;
            status.residual = dist;
            status.infeasible_step = rec.k;
            status.diagnostics = "level set empty: projection cannot reach b";
            return finish();
        }

        const double gamma_next = newton_update(sys.b(), z, gamma, zeta);
        if (gamma_next >= gamma - 1e-14) {
            // The inexact projection produced a non-decreasing level;
            // tighten the inner tolerance and redo the step.
            if (tightenings >= cfg.max_tightenings) {
                rec.gamma_next = gamma_next;
                rec.ms = ms_since(t_step);
                commit(rec);
                status.kind = SolveKind::Stalled;
                status.x = std::move(mnp.x_hat);
                status.gamma = gamma;
                status.residual = dist;
                status.diagnostics =
                    "no progress at inner tolerance " + std::to_string(eps_mnp);
                return finish();
            }
            ++tightenings;
            eps_mnp /= cfg.tighten_factor;
            warm = std::move(mnp.x_hat);
            continue;  // step not committed
        }

        rec.gamma_next = gamma_next;
        rec.ms = ms_since(t_step);
        commit(rec);
        gamma = gamma_next;
        warm = std::move(mnp.x_hat);
        ++k;
        status.gamma = gamma;
        status.residual = dist;
        status.x = warm;
    }

    status.kind = SolveKind::IterCap;
    status.diagnostics = "Newton step budget exhausted";
    return finish();
}

const char* to_string(SolveKind kind) {
    switch (kind) {
        case SolveKind::Optimal: return "Optimal";
        case SolveKind::Infeasible: return "Infeasible";
        case SolveKind::IterCap: return "IterCap";
        case SolveKind::Stalled: return "Stalled";
    }
    return "Unknown";
}

}  // namespace cbn
