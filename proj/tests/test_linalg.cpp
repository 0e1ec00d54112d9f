// cbn - Newton-type solver for conic linear programs over conic boxes
// Copyright 2026 cbn contributors
// Licensed under the Apache License, Version 2.0

#include <cmath>

#include <doctest.h>

#include "cbn/errors.hpp"
#include "cbn/linalg.hpp"
#include "cbn/rng.hpp"
#include "helpers.hpp"

using cbn::DenseMatrix;
using cbn::Vector;

namespace {

double frob_diff(const DenseMatrix& a, const DenseMatrix& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        const double d = a.data()[i] - b.data()[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

DenseMatrix reconstruct(const cbn::SymEig& eig) {
    const std::size_t n = eig.values.size();
    DenseMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                acc += eig.vectors(i, k) * eig.values[k] * eig.vectors(j, k);
            out(i, j) = acc;
        }
    return out;
}

}  // namespace

TEST_CASE("cholesky of the identity is the identity") {
    const DenseMatrix v = cbn::cholesky(DenseMatrix::identity(2), 1e-12);
    CHECK(frob_diff(v, DenseMatrix::identity(2)) < 1e-14);
}

TEST_CASE("cholesky of diag(4,9) is diag(2,3)") {
    DenseMatrix m(2, 2);
    m(0, 0) = 4.0;
    m(1, 1) = 9.0;
    const DenseMatrix v = cbn::cholesky(m);
    REQUIRE(v.rows() == 2);
    REQUIRE(v.cols() == 2);
    CHECK(v(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(v(1, 1) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(std::abs(v(0, 1)) < 1e-14);
    CHECK(std::abs(v(1, 0)) < 1e-14);
}

TEST_CASE("cholesky multiplies back for a dense 2x2") {
    DenseMatrix m(2, 2);
    m(0, 0) = 2.0;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    m(1, 1) = 2.0;
    const DenseMatrix v = cbn::cholesky(m);
    CHECK(frob_diff(v.multiply(v.transposed()), m) < 1e-10);
}

TEST_CASE("cholesky reconstructs random PSD matrices of growing size") {
    cbn::Rng rng(42);
    for (std::size_t n : {5u, 12u, 20u, 30u}) {
        const DenseMatrix m = th::random_psd_matrix(rng, n, n);
        const DenseMatrix v = cbn::cholesky(m);
        CHECK(frob_diff(v.multiply(v.transposed()), m) <= 1e-9 * (1.0 + m.frobenius_norm()));
    }
}

TEST_CASE("cholesky of a singular matrix returns a thin factor") {
    cbn::Rng rng(7);
    const DenseMatrix m = th::random_psd_matrix(rng, 6, 2);  // rank 2
    const DenseMatrix v = cbn::cholesky(m);
    CHECK(v.cols() <= 3);  // rank-revealing: dropped null directions
    CHECK(frob_diff(v.multiply(v.transposed()), m) <= 1e-9 * (1.0 + m.frobenius_norm()));
}

TEST_CASE("cholesky rejects indefinite input") {
    DenseMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    CHECK_THROWS_AS(cbn::cholesky(m), cbn::NotPsd);
}

TEST_CASE("sym_eig of diag(3,1)") {
    DenseMatrix m(2, 2);
    m(0, 0) = 3.0;
    m(1, 1) = 1.0;
    const cbn::SymEig eig = cbn::sym_eig(m);
    CHECK(eig.values[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(eig.values[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(std::abs(eig.vectors(0, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(eig.vectors(1, 1)) - 1.0) < 1e-12);
}

TEST_CASE("sym_eig of the exchange matrix") {
    DenseMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    const cbn::SymEig eig = cbn::sym_eig(m);
    CHECK(eig.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eig.values[1] == doctest::Approx(-1.0).epsilon(1e-14));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // Eigenvectors up to sign: (1,1)/sqrt(2) and (1,-1)/sqrt(2).
    CHECK(std::abs(std::abs(eig.vectors(0, 0)) - inv_sqrt2) < 1e-12);
    CHECK(std::abs(std::abs(eig.vectors(1, 0)) - inv_sqrt2) < 1e-12);
    CHECK(eig.vectors(0, 0) * eig.vectors(1, 0) > 0.0);   // same sign for +1
    CHECK(eig.vectors(0, 1) * eig.vectors(1, 1) < 0.0);   // opposite for -1
}

TEST_CASE("sym_eig reconstruction and orthogonality on random symmetric input") {
    cbn::Rng rng(3);
    for (int rep = 0; rep < 5; ++rep) {
        const DenseMatrix m = th::random_symmetric(rng, 5, -2.0, 2.0);
        const cbn::SymEig eig = cbn::sym_eig(m);
        CHECK(frob_diff(reconstruct(eig), m) <= 1e-10 * (1.0 + m.frobenius_norm()));
        const DenseMatrix vtv = eig.vectors.transposed().multiply(eig.vectors);
        CHECK(frob_diff(vtv, DenseMatrix::identity(5)) <= 1e-10);
        for (std::size_t i = 0; i + 1 < eig.values.size(); ++i)
            CHECK(eig.values[i] >= eig.values[i + 1]);
    }
}

TEST_CASE("least_squares with the identity returns the rhs") {
    const Vector x = cbn::least_squares(DenseMatrix::identity(2), Vector{1.0, 2.0});
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("least_squares of an overdetermined column is the mean") {
    DenseMatrix m(2, 1);
    m(0, 0) = 1.0;
    m(1, 0) = 1.0;
    const Vector x = cbn::least_squares(m, Vector{0.0, 2.0});
    REQUIRE(x.size() == 1);
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("least_squares underdetermined returns the minimum-norm solution") {
    DenseMatrix m(1, 2);
    m(0, 0) = 1.0;
    m(0, 1) = 1.0;
    const Vector x = cbn::least_squares(m, Vector{2.0});
    REQUIRE(x.size() == 2);
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("least_squares residual is minimal under sampled perturbations") {
    cbn::Rng rng(11);
    for (int rep = 0; rep < 4; ++rep) {
        const std::size_t rows = 6, cols = 4;
        DenseMatrix m = th::uniform_mat(rng, rows, cols, -1.0, 1.0);
        if (rep % 2 == 1)  // force rank deficiency
            for (std::size_t i = 0; i < rows; ++i) m(i, 3) = 2.0 * m(i, 0) - m(i, 1);
        const Vector rhs = th::uniform_vec(rng, rows, -1.0, 1.0);
        const Vector x = cbn::least_squares(m, rhs);
        const double base = cbn::distance2(m.apply(x), rhs);
        for (int trial = 0; trial < 50; ++trial) {
            Vector xp = x;
            for (double& v : xp) v += rng.uniform(-0.3, 0.3);
            CHECK(cbn::distance2(m.apply(xp), rhs) >= base - 1e-9);
        }
    }
}

TEST_CASE("spectral_norm_bound dominates the action of the matrix") {
    cbn::Rng rng(5);
    for (int rep = 0; rep < 5; ++rep) {
        const DenseMatrix m = th::uniform_mat(rng, 7, 4, -2.0, 2.0);
        const double bound = cbn::spectral_norm_bound(m);
        for (int trial = 0; trial < 20; ++trial) {
            Vector v = th::uniform_vec(rng, 4, -1.0, 1.0);
            const double nv = cbn::norm2(v);
            if (nv == 0.0) continue;
            CHECK(cbn::norm2(m.apply(v)) <= bound * nv * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("DenseMatrix rejects mismatched dimensions") {
    DenseMatrix m(2, 3);
    CHECK_THROWS_AS((void)m.apply(Vector{1.0, 2.0}), cbn::DimensionMismatch);
    CHECK_THROWS_AS((void)m.apply_transpose(Vector{1.0, 2.0, 3.0}), cbn::DimensionMismatch);
}
