// cbn - Newton-type solver for conic linear programs over conic boxes
// Copyright 2026 cbn contributors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cbn/cones.hpp"
#include "cbn/linalg.hpp"
#include "cbn/mnp.hpp"
#include "cbn/model.hpp"

namespace cbn {

// Largest objective value over the box alone (ignoring A x = b): the
// starting upper bound for the outer iteration.
double gamma0(const BoxClp& p);
double gamma0(const BoxOracle& oracle, std::span<const double> c);

// One generalized Newton step on the distance function: from the projection
// z (constraint part) with objective level zeta of bbar(gamma_prev) onto the
// image set, the next level is
//   gamma = zeta - ||b - z||^2 / (gamma_prev - zeta).
// Throws DivisionGuard when gamma_prev - zeta < 1e-14; callers decide
// between the optimality and infeasibility readings in that case.
double newton_update(std::span<const double> b, std::span<const double> z,
                     double gamma_prev, double zeta);

struct SolverConfig {
    double eps_outer = 1e-6;   // accept when dist(bbar(gamma), Zbar) < eps_outer
    double eps_mnp = 0.0;      // inner gap tolerance; <= 0 means eps_outer / 10
    std::size_t max_newton = 200;
    std::size_t mnp_max_major = 5000;
    std::size_t mnp_minor_factor = 10;
    double tighten_factor = 10.0;   // eps_mnp shrink on a non-decreasing step
    std::size_t max_tightenings = 3;
};

enum class SolveKind { Optimal, Infeasible, IterCap, Stalled };

struct SolveStatus {
    SolveKind kind = SolveKind::IterCap;
    Vector x;            // best box point (empty for Infeasible)
    double gamma = 0.0;  // objective level at termination
    double residual = 0.0;  // final dist(bbar(gamma), Zbar) estimate
    std::size_t infeasible_step = 0;  // Newton step that certified infeasibility
    std::string diagnostics;
};

struct NewtonStepRecord {
    std::size_t k = 0;       // 1-based committed step index
    double gamma_prev = 0.0;
    double zeta = 0.0;
    double dist = 0.0;
    double mnp_gap = 0.0;
    std::size_t mnp_iterations = 0;  // inner affine solves
    std::size_t oracle_calls = 0;
    double gamma_next = 0.0;
    double ms = 0.0;
};

struct SolveTrace {
    std::vector<NewtonStepRecord> steps;
    SolveKind final_kind = SolveKind::IterCap;
    double gamma0 = 0.0;
    std::size_t total_oracle_calls = 0;
    std::size_t total_mnp_iterations = 0;
    double total_ms = 0.0;
};

using ProgressCallback = std::function<void(const NewtonStepRecord&)>;

// Run the outer Newton iteration on max <c,x> s.t. Ax = b, x in [l,u]_K.
// The trace (when supplied) records one row per committed Newton step; the
// callback fires once per committed step.
SolveStatus solve(const BoxClp& p, const SolverConfig& cfg = {},
                  SolveTrace* trace = nullptr, const ProgressCallback& progress = {});

const char* to_string(SolveKind kind);

}  // namespace cbn
