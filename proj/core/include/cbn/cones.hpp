// cbn - Newton-type solver for conic linear programs over conic boxes
// Copyright 2026 cbn contributors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cbn/linalg.hpp"

namespace cbn {

// Self-dual cones the solver understands. Points live in flat coordinates:
//   Orthant(n)  - x in R^n,         x >= 0
//   Lorentz(n)  - x = (x0, xt) in R^{n+1},  ||xt||_2 <= x0
//   Psd(n)      - svec(X) in R^{n(n+1)/2},  X symmetric PSD of side n
//   Product     - concatenation of block coordinates
enum class ConeKind { Orthant, Lorentz, Psd, Product };

class Cone {
  public:
    static Cone orthant(std::size_t n);
    static Cone lorentz(std::size_t n);  // n = vector-part dimension, ambient n+1
    static Cone psd(std::size_t n);      // n = matrix side, ambient n(n+1)/2
    static Cone product(std::vector<Cone> blocks);

    ConeKind kind() const { return kind_; }
    // The defining parameter n (see above); for products, the block count.
    std::size_t order() const;
    std::size_t ambient_dim() const { return ambient_; }
    const std::vector<Cone>& blocks() const;

    bool operator==(const Cone& other) const;

  private:
    Cone() = default;
    ConeKind kind_ = ConeKind::Orthant;
    std::size_t n_ = 0;
    std::size_t ambient_ = 0;
    std::vector<Cone> blocks_;
};

// --- symmetric-matrix vectorization --------------------------------------

// Isometric vectorization: row-major upper triangle, off-diagonal entries
// scaled by sqrt(2), so that <svec(X), svec(Y)> = <X, Y>_F.
Vector svec(const DenseMatrix& x);
DenseMatrix smat(std::span<const double> v);
std::size_t svec_dim(std::size_t n);     // n(n+1)/2
std::size_t smat_side(std::size_t len);  // inverse of svec_dim; throws if not triangular

// --- membership and projection -------------------------------------------

// x in K up to tol: componentwise slack for the orthant, cone-inequality
// slack for Lorentz, eigenvalue floor for PSD (relative to the spectral
// scale), all blocks for products.
bool contains(const Cone& cone, std::span<const double> x, double tol);

// Euclidean projection onto K.
Vector project_cone(const Cone& cone, std::span<const double> x);

// Moreau split c = p - q with p = proj_K(c), q = proj_{K}(-c) for self-dual
// K; p, q in K and <p, q> = 0.
struct MoreauParts {
    Vector toward;   // projection of c onto K
    Vector against;  // c = toward - against, against in K, <toward,against> = 0
};
MoreauParts moreau_decompose(const Cone& cone, std::span<const double> c);

// --- conic boxes ----------------------------------------------------------

// [l, u]_K = { x : x - l in K, u - x in K }. Construction validates that
// the width w = u - l lies in K (tolerance 1e-10 relative) and that the box
// is nondegenerate (w != 0).
class ConicBox {
  public:
    ConicBox(Cone cone, Vector l, Vector u);

    const Cone& cone() const { return cone_; }
    const Vector& lower() const { return l_; }
    const Vector& upper() const { return u_; }
    Vector width() const;
    std::size_t ambient_dim() const { return cone_.ambient_dim(); }

    bool contains_point(std::span<const double> x, double tol) const;

  private:
    Cone cone_;
    Vector l_;
    Vector u_;
};

// --- closed-form linear optimization over a box ---------------------------

struct LinOptResult {
    Vector point;
    double value = 0.0;
};

// Orthant box: coordinatewise endpoint selection; zero objective entries
// pick the upper endpoint.
LinOptResult linopt_box_orthant(std::span<const double> l, std::span<const double> u,
                                std::span<const double> c);

// Precomputed quantities for a Lorentz-cone box with width w = u - l:
// the ellipsoid slice parameters and the rank-one square-root pair
//   Q^{1/2}  = I - alpha * wt wt^T,   Q^{-1/2} = I + beta * wt wt^T.
struct LorentzBoxCache {
    Vector w;       // full width (w0, wt)
    Vector wbar;    // wt / w0
    double wbar0 = 0.0;  // (w0^2 - ||wt||^2) / (2 w0)
    double rho = 0.0;    // sqrt(w0 * wbar0 / 2)
    double alpha = 0.0;
    double beta = 0.0;
    bool boundary = false;  // width on the cone boundary: box is the segment [l, u]
};

// Throws DegenerateBox when w = 0 (guarded already by ConicBox) and
// DimensionMismatch when the box is not a single Lorentz cone.
LorentzBoxCache lorentz_cache(const ConicBox& box);

// Closed-form argmax of <c, x> over a Lorentz box: the candidate from the
// inscribed ellipsoid slice (interior width) against the endpoints l, u.
LinOptResult linopt_box_lorentz(const ConicBox& box, const LorentzBoxCache& cache,
                                std::span<const double> c);

// Precomputed factor for a PSD box [L, U]: W = U - L = V V^T. V may have
// fewer columns than the side when W is singular.
struct PsdBoxCache {
    DenseMatrix v;  // n x r factor, W = V V^T
};

PsdBoxCache psd_cache(const ConicBox& box);

// Argmax of <C, X>_F over the matrix box [L, L + VV^T]: eigendecompose
// V^T C V and clamp the spectrum to {0, 1} (nonnegative eigenvalues pick 1,
// ties included).
DenseMatrix linopt_box_psd(const DenseMatrix& l_mat, const PsdBoxCache& cache,
                           const DenseMatrix& c_mat);

// Oracle over a (possibly product) box. Builds all per-block caches once;
// maximize() is then cheap enough to sit in the inner loop.
class BoxOracle {
  public:
    explicit BoxOracle(ConicBox box);

    const ConicBox& box() const { return box_; }

    // argmax_{x in box} <c, x>
    LinOptResult maximize(std::span<const double> c) const;

  private:
    struct Block {
        std::size_t offset = 0;
        std::size_t dim = 0;
        ConeKind kind = ConeKind::Orthant;
        bool fixed = false;  // zero-width block: the box is the single point l
        Vector l, u;
        std::optional<LorentzBoxCache> lorentz;
        std::optional<PsdBoxCache> psd;
        DenseMatrix psd_lower;  // smat of the block's l (PSD blocks only)
    };

    void flatten(const Cone& cone, std::span<const double> l, std::span<const double> u,
                 std::size_t offset);

    ConicBox box_;
    std::vector<Block> blocks_;
};

// One-shot convenience wrapper around BoxOracle.
LinOptResult linopt_box(const ConicBox& box, std::span<const double> c);

// Upper bound on the Euclidean diameter of [l, u]_K:
//   orthant ||u - l||_2, Lorentz 2*sqrt(2)*w0, PSD 2*tr(W),
//   products combine blockwise in quadrature.
double diam_upper_bound(const ConicBox& box);

}  // namespace cbn
