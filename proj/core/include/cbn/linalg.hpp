// cbn - Newton-type solver for conic linear programs over conic boxes
// Copyright 2026 cbn contributors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cbn {

using Vector = std::vector<double>;

// Dense row-major matrix. Small and deliberately minimal: the solver's
// matrices are modest (hundreds of rows/columns), so everything is done
// with straightforward O(n^3) kernels and no external BLAS.
class DenseMatrix {
  public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
    DenseMatrix(std::size_t rows, std::size_t cols, Vector data);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const Vector& data() const { return data_; }
    Vector& data() { return data_; }

    // y = M x
    Vector apply(std::span<const double> x) const;
    // y = M^T x
    Vector apply_transpose(std::span<const double> x) const;

    DenseMatrix transposed() const;
    DenseMatrix multiply(const DenseMatrix& rhs) const;

    double frobenius_norm() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vector data_;
};

// --- vector helpers ------------------------------------------------------

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double norm_inf(std::span<const double> a);
// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> x);
Vector subtract(std::span<const double> a, std::span<const double> b);
double distance2(std::span<const double> a, std::span<const double> b);
bool all_finite(std::span<const double> a);

// --- factorizations ------------------------------------------------------

// Eigendecomposition of a symmetric matrix: M = V diag(values) V^T with
// orthonormal eigenvector columns and eigenvalues sorted descending.
struct SymEig {
    Vector values;
    DenseMatrix vectors;  // column j is the eigenvector for values[j]
};

// Cyclic Jacobi iteration. Throws NoConvergence if the off-diagonal mass
// has not collapsed after 100 sweeps; throws DimensionMismatch for a
// non-square input. The input is symmetrized as (M + M^T)/2 first.
SymEig sym_eig(const DenseMatrix& m);

// Factor a symmetric positive semidefinite M as V V^T. Full-rank inputs
// take the classical Cholesky path (V lower triangular, n x n); inputs
// with tiny or zero pivots fall back to the eigenvalue square root,
// dropping eigenvalues below ridge_tol * lambda_max and returning an
// n x r factor. Throws NotPsd when an eigenvalue is below
// -ridge_tol * lambda_max.
DenseMatrix cholesky(const DenseMatrix& m, double ridge_tol = 1e-10);

// Least-squares solve: minimizes ||M x - rhs||_2. Full column rank is
// handled by Householder QR with column pivoting; rank-deficient or wide
// systems return the minimum-norm solution through an eigendecomposition
// pseudo-inverse of the smaller Gram matrix.
Vector least_squares(const DenseMatrix& m, std::span<const double> rhs);

// Upper bound on the spectral norm ||M||_2: the exact Gram eigenvalue
// square root inflated by a 1e-9 relative safety factor so that the bound
// remains valid under the eigensolve's own rounding.
double spectral_norm_bound(const DenseMatrix& m);

}  // namespace cbn
