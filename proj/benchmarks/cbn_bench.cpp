// cbn - Newton-type solver for conic linear programs over conic boxes
// Copyright 2026 cbn contributors
// Licensed under the Apache License, Version 2.0
//
// Microbenchmarks for the hot paths: the per-cone oracles, one inner
// projection, and a full small solve per family.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "cbn/cones.hpp"
#include "cbn/instances.hpp"
#include "cbn/mnp.hpp"
#include "cbn/model.hpp"
#include "cbn/newton.hpp"
#include "cbn/rng.hpp"

namespace {

cbn::Vector random_objective(std::uint64_t seed, std::size_t dim) {
    cbn::Rng rng(seed);
    cbn::Vector c(dim);
    for (double& v : c) v = rng.uniform(-1.0, 1.0);
    return c;
}

void bm_oracle_orthant(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const cbn::BoxClp p = cbn::gen_orthant_lp(n, 1, 42);
    const cbn::BoxOracle oracle(p.box);
    const cbn::Vector c = random_objective(7, n);
    for (auto _ : state) benchmark::DoNotOptimize(oracle.maximize(c));
}
BENCHMARK(bm_oracle_orthant)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

void bm_oracle_lorentz(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const cbn::BoxClp p = cbn::gen_socp(n, 1, 42);
    const cbn::BoxOracle oracle(p.box);
    const cbn::Vector c = random_objective(7, n + 1);
    for (auto _ : state) benchmark::DoNotOptimize(oracle.maximize(c));
}
BENCHMARK(bm_oracle_lorentz)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

void bm_oracle_psd(benchmark::State& state) {
    const std::size_t side = static_cast<std::size_t>(state.range(0));
    const cbn::BoxClp p = cbn::gen_sdp(side, 1, 42);
    const cbn::BoxOracle oracle(p.box);
    const cbn::Vector c = random_objective(7, cbn::svec_dim(side));
    for (auto _ : state) benchmark::DoNotOptimize(oracle.maximize(c));
}
BENCHMARK(bm_oracle_psd)->Arg(10)->Arg(15)->Unit(benchmark::kMicrosecond);

void bm_mnp_project(benchmark::State& state) {
    const cbn::BoxClp p = cbn::gen_socp(static_cast<std::size_t>(state.range(0)), 5, 3);
    const cbn::LiftedSystem sys(p);
    const cbn::BoxOracle oracle(p.box);
    const cbn::Vector target = sys.bbar(cbn::gamma0(p));
    cbn::Vector mid(p.ambient_dim());
    for (std::size_t i = 0; i < mid.size(); ++i)
        mid[i] = 0.5 * (p.box.lower()[i] + p.box.upper()[i]);
    cbn::MnpConfig cfg;
    cfg.eps = 1e-6;
    for (auto _ : state) {
        const cbn::MnpResult res = cbn::mnp_project(sys, oracle, target, mid, cfg);
        benchmark::DoNotOptimize(res.dist);
    }
}
BENCHMARK(bm_mnp_project)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void bm_solve_socp(benchmark::State& state) {
    const cbn::BoxClp p = cbn::gen_socp(static_cast<std::size_t>(state.range(0)), 5, 3);
    cbn::SolverConfig cfg;
    cfg.eps_outer = 1e-6;
    cfg.eps_mnp = 1e-6;
    for (auto _ : state) {
        const cbn::SolveStatus st = cbn::solve(p, cfg);
        benchmark::DoNotOptimize(st.gamma);
    }
}
BENCHMARK(bm_solve_socp)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void bm_solve_sdp(benchmark::State& state) {
    const cbn::BoxClp p = cbn::gen_sdp(static_cast<std::size_t>(state.range(0)), 4, 3);
    cbn::SolverConfig cfg;
    cfg.eps_outer = 1e-6;
    cfg.eps_mnp = 1e-7;
    for (auto _ : state) {
        const cbn::SolveStatus st = cbn::solve(p, cfg);
        benchmark::DoNotOptimize(st.gamma);
    }
}
BENCHMARK(bm_solve_sdp)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
