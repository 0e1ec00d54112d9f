// cbn - Newton-type solver for conic linear programs over conic boxes
// Copyright 2026 cbn contributors
// Licensed under the Apache License, Version 2.0

#include "cbn/instances.hpp"

#include <cmath>
#include <stdexcept>

#include "cbn/errors.hpp"
#include "cbn/rng.hpp"

namespace cbn {

namespace {

Vector uniform_vector(Rng& rng, std::size_t n, double lo, double hi) {
    Vector v(n);
    for (double& x : v) x = rng.uniform(lo, hi);
    return v;
}

DenseMatrix uniform_matrix(Rng& rng, std::size_t rows, std::size_t cols, double lo, double hi) {
    DenseMatrix m(rows, cols);
    for (double& x : m.data()) x = rng.uniform(lo, hi);
    return m;
}

Vector midpoint_rhs(const DenseMatrix& a, const Vector& l, const Vector& u) {
    Vector mid(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) mid[i] = 0.5 * (l[i] + u[i]);
    return a.apply(mid);
}

}  // namespace

BoxClp gen_socp(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (n == 0) throw DimensionMismatch("gen_socp: n must be positive");
    Rng rng(seed);
    const std::size_t dim = n + 1;

    Vector u(dim, 0.0);
    u[0] = 10.0;
    Vector tail = uniform_vector(rng, n, -0.5, 0.5);
    const double target_norm = rng.uniform(0.0, 10.0);
    const double tail_norm = norm2(tail);
    if (tail_norm > 0.0) {
        const double f = target_norm / tail_norm;
        for (std::size_t i = 0; i < n; ++i) u[i + 1] = f * tail[i];
    }
    Vector l(dim, 0.0);

    Vector c = uniform_vector(rng, dim, -0.5, 0.5);
    DenseMatrix a = uniform_matrix(rng, m, dim, 0.0, 1.0);
    Vector b = midpoint_rhs(a, l, u);
    return BoxClp(std::move(a), std::move(b), std::move(c),
                  ConicBox(Cone::lorentz(n), std::move(l), std::move(u)));
}

BoxClp gen_sdp(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (n == 0) throw DimensionMismatch("gen_sdp: n must be positive");
    Rng rng(seed);
    const std::size_t dim = svec_dim(n);

    const DenseMatrix v = uniform_matrix(rng, n, n, 0.0, 1.0);
    DenseMatrix u_mat = v.multiply(v.transposed());
    for (std::size_t i = 0; i < n; ++i) u_mat(i, i) += 0.1;
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += u_mat(i, i);
    const double f = 10.0 / trace;
    for (double& x : u_mat.data()) x *= f;

    DenseMatrix c_mat(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double val = rng.uniform(-0.5, 0.5);
            c_mat(i, j) = val;
            c_mat(j, i) = val;
        }

    Vector l(dim, 0.0);
    Vector u = svec(u_mat);
    Vector c = svec(c_mat);
    DenseMatrix a = uniform_matrix(rng, m, dim, 0.0, 1.0);
    Vector b = midpoint_rhs(a, l, u);
    return BoxClp(std::move(a), std::move(b), std::move(c),
                  ConicBox(Cone::psd(n), std::move(l), std::move(u)));
}

BoxClp gen_orthant_lp(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (n == 0) throw DimensionMismatch("gen_orthant_lp: n must be positive");
    Rng rng(seed);
    Vector l(n, 0.0);
    Vector u = uniform_vector(rng, n, 0.0, 10.0);
    Vector c = uniform_vector(rng, n, -0.5, 0.5);
    DenseMatrix a = uniform_matrix(rng, m, n, 0.0, 1.0);
    Vector b = midpoint_rhs(a, l, u);
    return BoxClp(std::move(a), std::move(b), std::move(c),
                  ConicBox(Cone::orthant(n), std::move(l), std::move(u)));
}

BoxClp gen_infeasible(const BoxClp& base) {
    double entry_norm = 0.0;
    for (double x : base.a.data()) entry_norm += std::abs(x);
    const double offset = 1.0 + entry_norm * norm_inf(base.box.upper());
    Vector b = base.a.apply(base.box.upper());
    for (double& x : b) x += offset;
    // The norm offset provably clears the box range for orthant and Lorentz
    // rows; verify each row against the oracle maximum so the guarantee is
    // unconditional (PSD coordinates are not bounded by ||u||_inf).
    for (std::size_t i = 0; i < base.rows(); ++i) {
        Vector row(base.ambient_dim());
        for (std::size_t j = 0; j < row.size(); ++j) row[j] = base.a(i, j);
        const double reachable = linopt_box(base.box, row).value;
        if (b[i] < reachable + 1.0) b[i] = reachable + 1.0;
    }
    return BoxClp(base.a, std::move(b), base.c, base.box);
}

BoxClp generate(const GenSpec& spec) {
    BoxClp p = [&spec]() {
        switch (spec.family) {
            case Family::OrthantLp: return gen_orthant_lp(spec.n, spec.m, spec.seed);
            case Family::Socp: return gen_socp(spec.n, spec.m, spec.seed);
            case Family::Sdp: return gen_sdp(spec.n, spec.m, spec.seed);
        }
        throw std::invalid_argument("generate: unknown family");
    }();
    if (spec.infeasible) return gen_infeasible(p);
    return p;
}

const char* to_string(Family family) {
    switch (family) {
        case Family::OrthantLp: return "orthant";
        case Family::Socp: return "socp";
        case Family::Sdp: return "sdp";
    }
    return "unknown";
}

Family family_from_string(const std::string& name) {
    if (name == "orthant" || name == "lp") return Family::OrthantLp;
    if (name == "socp") return Family::Socp;
    if (name == "sdp") return Family::Sdp;
    throw std::invalid_argument("unknown family: " + name);
}

}  // namespace cbn
