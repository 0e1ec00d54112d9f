// cbn - Newton-type solver for conic linear programs over conic boxes
// Copyright 2026 cbn contributors
// Licensed under the Apache License, Version 2.0
//
// Shared helpers for the unit and acceptance tests: random boxes per cone
// family, independent feasible samplers, and a brute-force box-LP solver.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "cbn/cones.hpp"
#include "cbn/linalg.hpp"
#include "cbn/model.hpp"
#include "cbn/rng.hpp"

namespace th {

using cbn::DenseMatrix;
using cbn::Vector;

inline Vector uniform_vec(cbn::Rng& rng, std::size_t n, double lo, double hi) {
    Vector v(n);
    for (double& x : v) x = rng.uniform(lo, hi);
    return v;
}

inline DenseMatrix uniform_mat(cbn::Rng& rng, std::size_t rows, std::size_t cols, double lo,
                               double hi) {
    DenseMatrix m(rows, cols);
    for (double& x : m.data()) x = rng.uniform(lo, hi);
    return m;
}

inline DenseMatrix random_symmetric(cbn::Rng& rng, std::size_t n, double lo, double hi) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = rng.uniform(lo, hi);
    return m;
}

inline DenseMatrix random_psd_matrix(cbn::Rng& rng, std::size_t n, std::size_t rank) {
    DenseMatrix g = uniform_mat(rng, n, rank, -1.0, 1.0);
    return g.multiply(g.transposed());
}

inline cbn::ConicBox random_orthant_box(cbn::Rng& rng, std::size_t n) {
    Vector l = uniform_vec(rng, n, -2.0, 2.0);
    Vector u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = l[i] + rng.uniform(0.05, 3.0);
    return {cbn::Cone::orthant(n), std::move(l), std::move(u)};
}

// Width strictly inside the cone: w0 >= margin * ||wt||.
inline cbn::ConicBox random_lorentz_box(cbn::Rng& rng, std::size_t n, double margin = 1.3) {
    Vector l = uniform_vec(rng, n + 1, -1.0, 1.0);
    Vector wt = uniform_vec(rng, n, -1.0, 1.0);
    const double tail = cbn::norm2(wt);
    const double w0 = std::max(margin * tail, 0.1) * rng.uniform(1.0, 2.0);
    Vector u(n + 1);
    u[0] = l[0] + w0;
    for (std::size_t i = 0; i < n; ++i) u[i + 1] = l[i + 1] + wt[i];
    return {cbn::Cone::lorentz(n), std::move(l), std::move(u)};
}

inline cbn::ConicBox random_psd_box(cbn::Rng& rng, std::size_t side, std::size_t rank = 0) {
    if (rank == 0) rank = side;
    DenseMatrix l_mat = random_symmetric(rng, side, -1.0, 1.0);
    DenseMatrix w = random_psd_matrix(rng, side, rank);
    for (std::size_t i = 0; i < side; ++i) w(i, i) += 0.05;  // keep the width solid
    Vector l = cbn::svec(l_mat);
    Vector u(l.size());
    const Vector wv = cbn::svec(w);
    for (std::size_t i = 0; i < l.size(); ++i) u[i] = l[i] + wv[i];
    return {cbn::Cone::psd(side), std::move(l), std::move(u)};
}

// Direct feasible point of an orthant box (independent of any oracle).
inline Vector sample_orthant_point(cbn::Rng& rng, const cbn::ConicBox& box) {
    Vector x(box.ambient_dim());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = rng.uniform();
        x[i] = (1.0 - t) * box.lower()[i] + t * box.upper()[i];
    }
    return x;
}

// Feasible PSD box point L + V S V^T with S = R diag(t) R^T, 0 <= t <= 1,
// in the eigenbasis of the width: both X - L and U - X stay PSD.
inline Vector sample_psd_point(cbn::Rng& rng, const cbn::ConicBox& box) {
    const std::size_t side = box.cone().order();
    const DenseMatrix l_mat = cbn::smat(box.lower());
    DenseMatrix w = cbn::smat(box.upper());
    for (std::size_t i = 0; i < w.data().size(); ++i) w.data()[i] -= l_mat.data()[i];

    const cbn::SymEig eig = cbn::sym_eig(w);
    // Random rotation R from a QR-free Gram-Schmidt of a random matrix.
    DenseMatrix r = uniform_mat(rng, side, side, -1.0, 1.0);
    for (std::size_t j = 0; j < side; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            double d = 0.0;
            for (std::size_t i = 0; i < side; ++i) d += r(i, j) * r(i, k);
            for (std::size_t i = 0; i < side; ++i) r(i, j) -= d * r(i, k);
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < side; ++i) nrm += r(i, j) * r(i, j);
        nrm = std::sqrt(std::max(nrm, 1e-300));
        for (std::size_t i = 0; i < side; ++i) r(i, j) /= nrm;
    }
    Vector t = uniform_vec(rng, side, 0.0, 1.0);
    // S = R diag(t) R^T in the width eigenbasis: Z = P sqrt(D) S sqrt(D) P^T.
    DenseMatrix s(side, side);
    for (std::size_t i = 0; i < side; ++i)
        for (std::size_t j = 0; j < side; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < side; ++k) acc += r(i, k) * t[k] * r(j, k);
            s(i, j) = acc;
        }
    DenseMatrix half(side, side);  // P sqrt(D)
    for (std::size_t i = 0; i < side; ++i)
        for (std::size_t j = 0; j < side; ++j)
            half(i, j) = eig.vectors(i, j) * std::sqrt(std::max(eig.values[j], 0.0));
    DenseMatrix z = half.multiply(s).multiply(half.transposed());
    for (std::size_t i = 0; i < side; ++i)
        for (std::size_t j = i + 1; j < side; ++j) z(i, j) = z(j, i) = 0.5 * (z(i, j) + z(j, i));
    for (std::size_t i = 0; i < z.data().size(); ++i) z.data()[i] += l_mat.data()[i];
    return cbn::svec(z);
}

// Exact maximum of <c, x> over { A x = b, l <= x <= u } by enumerating
// basic solutions (all column subsets of size m, all bound patterns for the
// rest). Returns nullopt when no vertex is feasible. Intended for n <= 8.
inline std::optional<double> brute_force_box_lp(const cbn::BoxClp& p) {
    const std::size_t n = p.ambient_dim();
    const std::size_t m = p.rows();
    const Vector& l = p.box.lower();
    const Vector& u = p.box.upper();

    std::optional<double> best;
    const auto consider = [&](const Vector& x) {
        for (std::size_t i = 0; i < n; ++i)
            if (x[i] < l[i] - 1e-9 || x[i] > u[i] + 1e-9) return;
        const Vector ax = p.a.apply(x);
        for (std::size_t i = 0; i < m; ++i)
            if (std::abs(ax[i] - p.b[i]) > 1e-8) return;
        const double val = cbn::dot(p.c, x);
        if (!best || val > *best) best = val;
    };

    if (m == 0) {
        Vector x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = p.c[i] < 0.0 ? l[i] : u[i];
        consider(x);
        return best;
    }

    std::vector<std::size_t> basis(m);
    std::vector<bool> select(n, false);
    std::fill(select.end() - static_cast<long>(m), select.end(), true);
    do {
        std::size_t bi = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (select[i]) basis[bi++] = i;
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < n; ++i)
            if (!select[i]) rest.push_back(i);

        for (std::size_t mask = 0; mask < (1ull << rest.size()); ++mask) {
            Vector x(n, 0.0);
            Vector rhs = p.b;
            for (std::size_t r = 0; r < rest.size(); ++r) {
                const std::size_t col = rest[r];
                x[col] = (mask >> r) & 1 ? u[col] : l[col];
                for (std::size_t row = 0; row < m; ++row) rhs[row] -= p.a(row, col) * x[col];
            }
            // Solve the m x m basic system by Gaussian elimination.
            DenseMatrix ab(m, m);
            for (std::size_t row = 0; row < m; ++row)
                for (std::size_t j = 0; j < m; ++j) ab(row, j) = p.a(row, basis[j]);
            bool singular = false;
            for (std::size_t col = 0; col < m && !singular; ++col) {
                std::size_t piv = col;
                for (std::size_t row = col + 1; row < m; ++row)
                    if (std::abs(ab(row, col)) > std::abs(ab(piv, col))) piv = row;
                if (std::abs(ab(piv, col)) < 1e-10) {
                    singular = true;
                    break;
                }
                if (piv != col) {
                    for (std::size_t j = 0; j < m; ++j) std::swap(ab(col, j), ab(piv, j));
                    std::swap(rhs[col], rhs[piv]);
                }
                for (std::size_t row = col + 1; row < m; ++row) {
                    const double f = ab(row, col) / ab(col, col);
                    for (std::size_t j = col; j < m; ++j) ab(row, j) -= f * ab(col, j);
                    rhs[row] -= f * rhs[col];
                }
            }
            if (singular) continue;
            for (std::size_t col = m; col-- > 0;) {
                double acc = rhs[col];
                for (std::size_t j = col + 1; j < m; ++j) acc -= ab(col, j) * rhs[j];
                rhs[col] = acc / ab(col, col);
            }
            for (std::size_t j = 0; j < m; ++j) x[basis[j]] = rhs[j];
            consider(x);
        }
    } while (std::next_permutation(select.begin(), select.end()));
    return best;
}

// Random midpoint-feasible orthant LP for end-to-end comparisons.
inline cbn::BoxClp random_small_orthant_lp(cbn::Rng& rng, std::size_t n, std::size_t m) {
    Vector l = uniform_vec(rng, n, -1.0, 0.0);
    Vector u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = l[i] + rng.uniform(0.1, 2.0);
    DenseMatrix a = uniform_mat(rng, m, n, -1.0, 1.0);
    Vector mid(n);
    for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (l[i] + u[i]);
    Vector b = a.apply(mid);
    Vector c = uniform_vec(rng, n, -1.0, 1.0);
    return {std::move(a), std::move(b), std::move(c),
            cbn::ConicBox(cbn::Cone::orthant(n), std::move(l), std::move(u))};
}

}  // namespace th
