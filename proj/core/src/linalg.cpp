// cbn - Newton-type solver for conic linear programs over conic boxes
// Copyright 2026 cbn contributors
// Licensed under the Apache License, Version 2.0

#include "cbn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cbn/errors.hpp"

namespace cbn {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, Vector data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        throw DimensionMismatch("DenseMatrix: data size does not match rows*cols");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Vector DenseMatrix::apply(std::span<const double> x) const {
    if (x.size() != cols_) throw DimensionMismatch("apply: vector size != cols");
    Vector y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* row = data_.data() + i * cols_;
        double acc = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

Vector DenseMatrix::apply_transpose(std::span<const double> x) const {
    if (x.size() != rows_) throw DimensionMismatch("apply_transpose: vector size != rows");
    Vector y(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* row = data_.data() + i * cols_;
        const double xi = x[i];
        for (std::size_t j = 0; j < cols_; ++j) y[j] += row[j] * xi;
    }
    return y;
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw DimensionMismatch("multiply: inner dimensions differ");
    DenseMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            const double* row = rhs.data_.data() + k * rhs.cols_;
            double* dst = out.data_.data() + i * rhs.cols_;
            for (std::size_t j = 0; j < rhs.cols_; ++j) dst[j] += aik * row[j];
        }
    }
    return out;
}

double DenseMatrix::frobenius_norm() const { return norm2(data_); }

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm2(std::span<const double> a) {
    double acc = 0.0;
    for (double v : a) acc += v * v;
    return std::sqrt(acc);
}

double norm_inf(std::span<const double> a) {
    double acc = 0.0;
    for (double v : a) acc = std::max(acc, std::abs(v));
    return acc;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    if (x.size() != y.size()) throw DimensionMismatch("axpy: size mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(double alpha, std::span<double> x) {
    for (double& v : x) v *= alpha;
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionMismatch("subtract: size mismatch");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

double distance2(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionMismatch("distance2: size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

bool all_finite(std::span<const double> a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

namespace {

DenseMatrix symmetrize(const DenseMatrix& m) {
    const std::size_t n = m.rows();
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));
    return a;
}

double offdiag_sq(const DenseMatrix& a) {
    double acc = 0.0;
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) acc += 2.0 * a(i, j) * a(i, j);
    return acc;
}

}  // namespace

SymEig sym_eig(const DenseMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("sym_eig: matrix not square");
    const std::size_t n = m.rows();
    SymEig out;
    out.vectors = DenseMatrix::identity(n);
    out.values.assign(n, 0.0);
    if (n == 0) return out;

    DenseMatrix a = symmetrize(m);
    DenseMatrix& v = out.vectors;
    const double total_sq = a.frobenius_norm();
    const double stop_sq = 1e-28 * (1.0 + total_sq) * (1.0 + total_sq);

    constexpr int kMaxSweeps = 100;
    bool converged = n == 1;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        if (offdiag_sq(a) <= stop_sq) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                const double app = a(p, p);
                const double aqq = a(q, q);
                if (std::abs(apq) <= 1e-18 * (std::abs(app) + std::abs(aqq) + 1e-290))
                    continue;
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = a(i, p);
                    const double aiq = a(i, q);
                    a(i, p) = a(p, i) = c * aip - s * aiq;
                    a(i, q) = a(q, i) = s * aip + c * aiq;
                }
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v(i, p);
                    const double viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }
    if (!converged && offdiag_sq(a) > stop_sq)
        throw NoConvergence("sym_eig: Jacobi sweeps exhausted");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&a](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
    DenseMatrix sorted(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) sorted(i, j) = v(i, order[j]);
    }
    out.vectors = std::move(sorted);
    return out;
}

namespace {

// Plain lower Cholesky; returns false when a pivot drops below the floor.
bool plain_cholesky(const DenseMatrix& a, double pivot_floor, DenseMatrix& l_out) {
    const std::size_t n = a.rows();
    DenseMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > pivot_floor)) return false;
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / ljj;
        }
    }
    l_out = std::move(l);
    return true;
}

}  // namespace

DenseMatrix cholesky(const DenseMatrix& m, double ridge_tol) {
    if (m.rows() != m.cols()) throw DimensionMismatch("cholesky: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return DenseMatrix(0, 0);
    DenseMatrix a = symmetrize(m);

    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(a(i, i)));
    const double pivot_floor = static_cast<double>(n) * 1e-14 * max_diag;

    DenseMatrix l;
    if (max_diag > 0.0 && plain_cholesky(a, pivot_floor, l)) return l;

    // Near-singular or indefinite-looking input: decide via the spectrum.
    SymEig eig = sym_eig(a);
    const double lmax = std::max(eig.values.empty() ? 0.0 : eig.values.front(), 0.0);
    for (double lam : eig.values)
        if (lam < -ridge_tol * std::max(lmax, 1e-300))
            throw NotPsd("cholesky: matrix has a negative eigenvalue");

    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i)
        if (eig.values[i] >= ridge_tol * lmax && eig.values[i] > 0.0) keep.push_back(i);

    DenseMatrix v(n, keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) {
        const double w = std::sqrt(eig.values[keep[j]]);
        for (std::size_t i = 0; i < n; ++i) v(i, j) = w * eig.vectors(i, keep[j]);
    }
    return v;
}

namespace {

// Minimum-norm least squares through the smaller Gram matrix.
Vector pinv_least_squares(const DenseMatrix& m, std::span<const double> rhs) {
    const std::size_t r = m.rows();
    const std::size_t k = m.cols();
    const bool tall = r >= k;
    const DenseMatrix mt = m.transposed();
    const DenseMatrix gram = tall ? mt.multiply(m) : m.multiply(mt);
    const Vector y = tall ? m.apply_transpose(rhs) : Vector(rhs.begin(), rhs.end());

    SymEig eig = sym_eig(gram);
    const double lmax = eig.values.empty() ? 0.0 : std::max(eig.values.front(), 0.0);
    const double cutoff = lmax * 1e-13;
    Vector sol(gram.rows(), 0.0);
    if (lmax > 0.0) {
        for (std::size_t j = 0; j < eig.values.size(); ++j) {
            const double lam = eig.values[j];
            if (lam <= cutoff) continue;
            double proj = 0.0;
            for (std::size_t i = 0; i < gram.rows(); ++i) proj += eig.vectors(i, j) * y[i];
            const double coeff = proj / lam;
            for (std::size_t i = 0; i < gram.rows(); ++i) sol[i] += coeff * eig.vectors(i, j);
        }
    }
    if (tall) return sol;
    return m.apply_transpose(sol);
}

}  // namespace

Vector least_squares(const DenseMatrix& m, std::span<const double> rhs) {
    if (rhs.size() != m.rows()) throw DimensionMismatch("least_squares: rhs size != rows");
    const std::size_t r = m.rows();
    const std::size_t k = m.cols();
    if (k == 0) return {};
    if (r < k) return pinv_least_squares(m, rhs);

    // Householder QR with column pivoting.
    DenseMatrix a = m;
    Vector q_rhs(rhs.begin(), rhs.end());
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    Vector col_sq(k, 0.0);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < r; ++i) col_sq[j] += a(i, j) * a(i, j);

    bool rank_ok = true;
    double first_pivot = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        std::size_t best = j;
        for (std::size_t c = j + 1; c < k; ++c)
            if (col_sq[c] > col_sq[best]) best = c;
        if (best != j) {
            for (std::size_t i = 0; i < r; ++i) std::swap(a(i, j), a(i, best));
            std::swap(col_sq[j], col_sq[best]);
            std::swap(perm[j], perm[best]);
        }

        double sigma = 0.0;
        for (std::size_t i = j; i < r; ++i) sigma += a(i, j) * a(i, j);
        double alpha = std::sqrt(sigma);
        if (a(j, j) > 0.0) alpha = -alpha;
        if (j == 0) first_pivot = std::abs(alpha);
        if (std::abs(alpha) <= 1e-12 * (first_pivot + 1e-300)) {
            rank_ok = false;
            break;
        }

        // Householder vector stored in-place below the diagonal.
        Vector hv(r - j, 0.0);
        hv[0] = a(j, j) - alpha;
        for (std::size_t i = j + 1; i < r; ++i) hv[i - j] = a(i, j);
        const double hnorm_sq = dot(hv, hv);
        a(j, j) = alpha;
        for (std::size_t i = j + 1; i < r; ++i) a(i, j) = 0.0;
        if (hnorm_sq > 0.0) {
            for (std::size_t c = j + 1; c < k; ++c) {
                double proj = 0.0;
                for (std::size_t i = j; i < r; ++i) proj += hv[i - j] * a(i, c);
                const double f = 2.0 * proj / hnorm_sq;
                for (std::size_t i = j; i < r; ++i) a(i, c) -= f * hv[i - j];
            }
            double proj = 0.0;
            for (std::size_t i = j; i < r; ++i) proj += hv[i - j] * q_rhs[i];
            const double f = 2.0 * proj / hnorm_sq;
            for (std::size_t i = j; i < r; ++i) q_rhs[i] -= f * hv[i - j];
        }
        for (std::size_t c = j + 1; c < k; ++c) col_sq[c] -= a(j, c) * a(j, c);
    }

    if (!rank_ok) return pinv_least_squares(m, rhs);

    Vector x_perm(k, 0.0);
    for (std::size_t jj = k; jj-- > 0;) {
        double s = q_rhs[jj];
        for (std::size_t c = jj + 1; c < k; ++c) s -= a(jj, c) * x_perm[c];
        x_perm[jj] = s / a(jj, jj);
    }
    Vector x(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) x[perm[j]] = x_perm[j];
    return x;
}

double spectral_norm_bound(const DenseMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    const DenseMatrix mt = m.transposed();
    const DenseMatrix gram =
        (m.rows() <= m.cols()) ? m.multiply(mt) : mt.multiply(m);
    SymEig eig = sym_eig(gram);
    const double lmax = eig.values.empty() ? 0.0 : std::max(eig.values.front(), 0.0);
    return std::sqrt(lmax) * (1.0 + 1e-9);
}

}  // namespace cbn
