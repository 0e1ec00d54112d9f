// cbn - Newton-type solver for conic linear programs over conic boxes
// Copyright 2026 cbn contributors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <span>

#include "cbn/cones.hpp"
#include "cbn/linalg.hpp"

namespace cbn {

// The problem   max <c, x>  s.t.  A x = b,  x in [l, u]_K.
// A may have zero rows (pure box maximization); column count must match
// the box's ambient dimension.
struct BoxClp {
    BoxClp(DenseMatrix a_in, Vector b_in, Vector c_in, ConicBox box_in);

    DenseMatrix a;
    Vector b;
    Vector c;
    ConicBox box;

    std::size_t ambient_dim() const { return box.ambient_dim(); }
    std::size_t rows() const { return a.rows(); }
};

// The lifted view used by the Newton iteration: Abar = [A; c^T] stacks the
// objective under the constraints, so that the moving target
// bbar(gamma) = (b, gamma) and the image set Zbar = Abar * box capture both
// feasibility and objective level in one distance computation.
class LiftedSystem {
  public:
    explicit LiftedSystem(const BoxClp& p);

    const DenseMatrix& abar() const { return abar_; }
    const Vector& b() const { return b_; }
    std::size_t m() const { return m_; }              // constraint rows
    std::size_t lifted_dim() const { return m_ + 1; }  // rows of Abar
    std::size_t ambient_dim() const { return abar_.cols(); }

    // (b, gamma)
    Vector bbar(double gamma) const;

    // Abar * x
    Vector apply(std::span<const double> x) const { return abar_.apply(x); }

    struct Residual {
        Vector z;       // constraint part of Abar x
        double zeta;    // objective part <c, x>
        double dist;    // || Abar x - bbar(gamma) ||_2
    };
    Residual residual(std::span<const double> x, double gamma) const;

  private:
    DenseMatrix abar_;
    Vector b_;
    std::size_t m_ = 0;
};

LiftedSystem lift(const BoxClp& p);

}  // namespace cbn
