// cbn - Newton-type solver for conic linear programs over conic boxes
// Copyright 2026 cbn contributors
// Licensed under the Apache License, Version 2.0
//
// Command-line front end: generate instances, solve them with a trace,
// and run benchmark sweeps aggregated into CSV tables.

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cbn/instances.hpp"
#include "cbn/newton.hpp"
#include "cbn/serialize.hpp"

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string cone_label(const cbn::Cone& cone) {
    switch (cone.kind()) {
        case cbn::ConeKind::Orthant:
            return "orthant(" + std::to_string(cone.order()) + ")";
        case cbn::ConeKind::Lorentz:
            return "lorentz(" + std::to_string(cone.order()) + ")";
        case cbn::ConeKind::Psd:
            return "psd(" + std::to_string(cone.order()) + ")";
        case cbn::ConeKind::Product: {
            std::string s = "product[";
            bool first = true;
            for (const cbn::Cone& b : cone.blocks()) {
                if (!first) s += ", ";
                s += cone_label(b);
                first = false;
            }
            return s + "]";
        }
    }
    return "?";
}

struct GenerateArgs {
    std::string family;
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t seed = 1;
    bool infeasible = false;
    std::string output = "instance.json";
};

int run_generate(const GenerateArgs& args) {
    cbn::GenSpec spec;
    spec.family = cbn::family_from_string(args.family);
    spec.n = args.n;
    spec.m = args.m;
    spec.seed = args.seed;
    spec.infeasible = args.infeasible;

    const cbn::BoxClp p = cbn::generate(spec);
    cbn::Provenance prov;
    prov.family = std::string(cbn::to_string(spec.family)) + (spec.infeasible ? "-infeasible" : "");
    prov.n = spec.n;
    prov.m = spec.m;
    prov.seed = spec.seed;
    cbn::save_instance(args.output, p, prov);

    std::cout << "instance: " << args.output << "\n"
              << "family:   " << prov.family << "\n"
              << "cone:     " << cone_label(p.box.cone()) << " (ambient "
              << p.ambient_dim() << ")\n"
              << "rows:     " << p.rows() << "\n"
              << "seed:     " << args.seed << "\n";
    if (spec.infeasible) {
        std::cout << "feasible: no (b pushed beyond every row's box range)\n";
    } else {
        cbn::Vector mid(p.ambient_dim());
        for (std::size_t i = 0; i < mid.size(); ++i)
            mid[i] = 0.5 * (p.box.lower()[i] + p.box.upper()[i]);
        const cbn::Vector am = p.a.apply(mid);
        const double err = cbn::distance2(am, p.b);
        const bool member = p.box.contains_point(mid, 1e-8);
        std::cout << "feasible: midpoint certificate |A*mid - b| = " << fmt_short(err)
                  << ", box membership " << (member ? "ok" : "FAILED") << "\n";
    }
    return 0;
}

struct SolveArgs {
    std::string instance;
    double eps_outer = 1e-6;
    double eps_mnp = 0.0;  // 0: family default
    std::size_t max_newton = 200;
    std::string trace_path;  // empty: derive from instance path
    bool quiet = false;
};

double family_default_eps_mnp(const std::optional<cbn::Provenance>& prov, double eps_outer) {
    if (prov) {
        if (prov->family == "socp") return 1e-6;
        if (prov->family == "sdp") return 1e-7;
    }
    return eps_outer / 10.0;
}

void write_trace(const std::string& path, const cbn::SolveTrace& trace,
                 const cbn::SolveStatus& status, double obj) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open trace file for writing: " + path);
    out << "k,gamma,zeta,dist,mnp_iters,oracle_calls,ms\n";
    for (const cbn::NewtonStepRecord& rec : trace.steps) {
        out << rec.k << ',' << fmt(rec.gamma_prev) << ',' << fmt(rec.zeta) << ','
            << fmt(rec.dist) << ',' << rec.mnp_iterations << ',' << rec.oracle_calls << ','
            << fmt_short(rec.ms) << "\n";
    }
    out << "status," << cbn::to_string(status.kind) << ',' << fmt(status.gamma) << ','
        << fmt(obj) << ',' << fmt(status.residual) << ',' << trace.steps.size() << ','
        << fmt_short(trace.total_ms) << "\n";
}

int exit_code_for(cbn::SolveKind kind) {
    switch (kind) {
        case cbn::SolveKind::Optimal: return 0;
        case cbn::SolveKind::Infeasible: return 3;
        case cbn::SolveKind::IterCap:
        case cbn::SolveKind::Stalled: return 4;
    }
    return 4;
}

int run_solve(const SolveArgs& args) {
    std::optional<cbn::Provenance> prov;
    std::optional<cbn::BoxClp> p;
    try {
        p.emplace(cbn::load_instance(args.instance, &prov));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    cbn::SolverConfig cfg;
    cfg.eps_outer = args.eps_outer;
    cfg.eps_mnp =
        args.eps_mnp > 0.0 ? args.eps_mnp : family_default_eps_mnp(prov, args.eps_outer);
    cfg.max_newton = args.max_newton;

    cbn::SolveTrace trace;
    const cbn::SolveStatus status = cbn::solve(*p, cfg, &trace);
    const double obj =
        status.x.empty() ? std::nan("") : cbn::dot(p->c, status.x);

    std::string trace_path = args.trace_path;
    if (trace_path.empty()) {
        std::filesystem::path base(args.instance);
        base.replace_extension();
        trace_path = base.string() + ".trace.csv";
    }
    write_trace(trace_path, trace, status, obj);

    if (!args.quiet) {
        std::cout << "instance: " << args.instance;
        if (prov)
            std::cout << " (" << prov->family << " n=" << prov->n << " m=" << prov->m
                      << " seed=" << prov->seed << ")";
        std::cout << "\n"
                  << "status:   " << cbn::to_string(status.kind) << "\n"
                  << "gamma:    " << fmt(status.gamma) << "\n"
                  << "obj:      " << fmt(obj) << "\n"
                  << "residual: " << fmt_short(status.residual) << "\n"
                  << "steps:    " << trace.steps.size() << " (mnp_iters "
                  << trace.total_mnp_iterations << ", oracle_calls "
                  << trace.total_oracle_calls << ")\n"
                  << "config:   eps_outer=" << fmt_short(cfg.eps_outer)
                  << " eps_mnp=" << fmt_short(cfg.eps_mnp)
                  << " max_newton=" << cfg.max_newton << "\n"
                  << "time:     " << fmt_short(trace.total_ms) << " ms\n"
                  << "trace:    " << trace_path << "\n";
        if (!status.diagnostics.empty())
            std::cout << "note:     " << status.diagnostics << "\n";
    }
    return exit_code_for(status.kind);
}

struct BenchArgs {
    std::string family;
    std::string tuples;
    std::string eps_list;
    std::size_t reps = 3;
    std::uint64_t seed = 1;
    double eps_outer = 1e-6;
    std::size_t max_newton = 200;
    std::string prefix = "bench";
};

struct BenchCell {
    std::size_t n = 0;
    std::size_t m = 0;
    double eps_mnp = 0.0;
    std::uint64_t seed = 0;
};

struct BenchRow {
    BenchCell cell;
    std::string status = "Error";
    double gamma = 0.0;
    double obj = 0.0;
    double residual = 0.0;
    std::size_t newton_steps = 0;
    std::size_t mnp_iters = 0;
    std::size_t oracle_calls = 0;
    double ms = 0.0;
};

std::vector<std::pair<std::size_t, std::size_t>> parse_tuples(const std::string& text) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto slash = item.find('/');
        if (slash == std::string::npos)
            throw CLI::ValidationError("--tuples", "expected n/m pairs like 50/10,100/10");
        out.emplace_back(std::stoul(item.substr(0, slash)), std::stoul(item.substr(slash + 1)));
    }
    if (out.empty()) throw CLI::ValidationError("--tuples", "no tuples given");
    return out;
}

std::vector<double> parse_eps_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    if (out.empty()) throw CLI::ValidationError("--eps", "no tolerances given");
    return out;
}

std::size_t bench_threads(std::size_t cells) {
    std::size_t n = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("CBN_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && v > 0) n = v;
    }
    if (n == 0) n = 1;
    return std::min(n, std::max<std::size_t>(cells, 1));
}

int run_bench(const BenchArgs& args) {
    const cbn::Family family = cbn::family_from_string(args.family);
    const auto tuples = parse_tuples(args.tuples);
    std::vector<double> eps_values;
    if (args.eps_list.empty()) {
        eps_values.push_back(family == cbn::Family::Sdp ? 1e-7 : 1e-6);
    } else {
        eps_values = parse_eps_list(args.eps_list);
    }
    if (args.reps == 0) throw CLI::ValidationError("--reps", "must be positive");

    std::vector<BenchCell> cells;
    for (const auto& [n, m] : tuples)
        for (const double eps : eps_values)
            for (std::size_t rep = 0; rep < args.reps; ++rep)
                cells.push_back({n, m, eps, args.seed + rep});

    std::vector<BenchRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    const std::size_t n_threads = bench_threads(cells.size());

    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            BenchRow& row = rows[i];
            row.cell = cells[i];
            try {
                cbn::GenSpec spec;
                spec.family = family;
                spec.n = cells[i].n;
                spec.m = cells[i].m;
                spec.seed = cells[i].seed;
                const cbn::BoxClp p = cbn::generate(spec);

                cbn::SolverConfig cfg;
                cfg.eps_outer = args.eps_outer;
                cfg.eps_mnp = cells[i].eps_mnp;
                cfg.max_newton = args.max_newton;

                cbn::SolveTrace trace;
                const cbn::SolveStatus status = cbn::solve(p, cfg, &trace);
                row.status = cbn::to_string(status.kind);
                row.gamma = status.gamma;
                row.obj = status.x.empty() ? std::nan("") : cbn::dot(p.c, status.x);
                row.residual = status.residual;
                row.newton_steps = trace.steps.size();
                row.mnp_iters = trace.total_mnp_iterations;
                row.oracle_calls = trace.total_oracle_calls;
                row.ms = trace.total_ms;
            } catch (const std::exception& e) {
                row.status = "Error";
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    const std::string family_name = cbn::to_string(family);
    const std::string runs_path = args.prefix + "_runs.csv";
    {
        std::ofstream out(runs_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + runs_path);
        out << "instance,family,n,m,seed,eps_mnp,status,gamma,obj,residual,"
               "newton_steps,mnp_iters,oracle_calls,ms\n";
        for (const BenchRow& row : rows) {
            out << family_name << '_' << row.cell.n << '_' << row.cell.m << "_s"
                << row.cell.seed << ',' << family_name << ',' << row.cell.n << ','
                << row.cell.m << ',' << row.cell.seed << ',' << fmt_short(row.cell.eps_mnp)
                << ',' << row.status << ',' << fmt(row.gamma) << ',' << fmt(row.obj) << ','
                << fmt_short(row.residual) << ',' << row.newton_steps << ',' << row.mnp_iters
                << ',' << row.oracle_calls << ',' << fmt_short(row.ms) << "\n";
        }
    }

    // Aggregate per (tuple, eps): one CSV per metric.
    struct Agg {
        std::size_t count = 0, optimal = 0;
        double ms = 0.0, steps = 0.0, oracle = 0.0;
    };
    const auto write_aggregate = [&](const std::string& suffix, const std::string& column,
                                     auto metric) {
        const std::string path = args.prefix + "_" + suffix + ".csv";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + path);
        out << "family,n,m,eps_mnp,reps,optimal," << column << "\n";
        for (const auto& [n, m] : tuples) {
            for (const double eps : eps_values) {
                Agg agg;
                for (const BenchRow& row : rows) {
                    if (row.cell.n != n || row.cell.m != m || row.cell.eps_mnp != eps)
                        continue;
                    if (row.status == "Error") continue;
                    ++agg.count;
                    if (row.status == "Optimal") ++agg.optimal;
                    agg.ms += row.ms;
                    agg.steps += static_cast<double>(row.newton_steps);
                    agg.oracle += static_cast<double>(row.oracle_calls);
                }
                const double denom = agg.count ? static_cast<double>(agg.count) : 1.0;
                out << family_name << ',' << n << ',' << m << ',' << fmt_short(eps) << ','
                    << agg.count << ',' << agg.optimal << ',' << fmt_short(metric(agg) / denom)
                    << "\n";
            }
        }
        std::cout << "wrote " << path << "\n";
        return path;
    };

    std::cout << "bench: " << family_name << ", " << cells.size() << " runs on "
              << n_threads << " thread(s)\n";
    std::cout << "wrote " << runs_path << "\n";
    write_aggregate("runtime", "mean_ms", [](const Agg& a) { return a.ms; });
    write_aggregate("newton_steps", "mean_newton_steps", [](const Agg& a) { return a.steps; });
    write_aggregate("mnp", "mean_oracle_calls", [](const Agg& a) { return a.oracle; });

    for (const auto& [n, m] : tuples)
        for (const double eps : eps_values) {
            std::size_t count = 0, optimal = 0;
            double ms = 0.0;
            for (const BenchRow& row : rows)
                if (row.cell.n == n && row.cell.m == m && row.cell.eps_mnp == eps &&
                    row.status != "Error") {
                    ++count;
                    if (row.status == "Optimal") ++optimal;
                    ms += row.ms;
                }
            std::cout << "  " << n << "/" << m << " eps=" << fmt_short(eps) << ": " << optimal
                      << "/" << count << " optimal, mean "
                      << fmt_short(count ? ms / static_cast<double>(count) : 0.0) << " ms\n";
        }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cbn - Newton-type solver for conic linear programs over conic boxes"};
    app.require_subcommand(1);

    GenerateArgs gen_args;
    CLI::App* gen = app.add_subcommand("generate", "Generate a random instance file");
    gen->add_option("--family", gen_args.family, "Instance family: orthant | socp | sdp")
        ->required();
    gen->add_option("--n", gen_args.n, "Cone parameter (orthant/Lorentz dim or PSD side)")
        ->required();
    gen->add_option("--m", gen_args.m, "Number of equality rows")->required();
    gen->add_option("--seed", gen_args.seed, "RNG seed (default 1)");
    gen->add_flag("--infeasible", gen_args.infeasible,
                  "Push b beyond the box range (infeasible by construction)");
    gen->add_option("-o,--output", gen_args.output, "Output path (default instance.json)");

    SolveArgs solve_args;
    CLI::App* slv = app.add_subcommand("solve", "Solve an instance file, write a trace CSV");
    slv->add_option("instance", solve_args.instance, "Instance file (JSON)")->required();
    slv->add_option("--eps-outer", solve_args.eps_outer, "Outer tolerance (default 1e-6)");
    slv->add_option("--eps-mnp", solve_args.eps_mnp,
                    "Inner gap tolerance (default: 1e-6 socp, 1e-7 sdp, else eps_outer/10)");
    slv->add_option("--max-newton", solve_args.max_newton, "Newton step cap (default 200)");
    slv->add_option("-o,--trace", solve_args.trace_path,
                    "Trace CSV path (default: <instance>.trace.csv)");
    slv->add_flag("--quiet", solve_args.quiet, "Suppress the summary");

    BenchArgs bench_args;
    CLI::App* ben = app.add_subcommand("bench", "Average solves over seeds/tolerances");
    ben->add_option("--family", bench_args.family, "Instance family")->required();
    ben->add_option("--tuples", bench_args.tuples, "Comma list of n/m pairs, e.g. 50/10,100/10")
        ->required();
    ben->add_option("--eps", bench_args.eps_list, "Comma list of MNP tolerances");
    ben->add_option("--reps", bench_args.reps, "Seeds per cell (default 3)");
    ben->add_option("--seed", bench_args.seed, "Base seed (default 1)");
    ben->add_option("--eps-outer", bench_args.eps_outer, "Outer tolerance (default 1e-6)");
    ben->add_option("--max-newton", bench_args.max_newton, "Newton step cap (default 200)");
    ben->add_option("-o,--prefix", bench_args.prefix, "Output CSV prefix (default bench)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) return run_generate(gen_args);
        if (slv->parsed()) return run_solve(solve_args);
        if (ben->parsed()) return run_bench(bench_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
