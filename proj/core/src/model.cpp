// cbn - Newton-type solver for conic linear programs over conic boxes
// Copyright 2026 cbn contributors
// Licensed under the Apache License, Version 2.0

#include "cbn/model.hpp"

#include <cmath>
#include <utility>

#include "cbn/errors.hpp"

namespace cbn {

BoxClp::BoxClp(DenseMatrix a_in, Vector b_in, Vector c_in, ConicBox box_in)
    : a(std::move(a_in)), b(std::move(b_in)), c(std::move(c_in)), box(std::move(box_in)) {
    const std::size_t n = box.ambient_dim();
    if (a.rows() > 0 && a.cols() != n)
        throw DimensionMismatch("BoxClp: A column count != box ambient dimension");
    if (b.size() != a.rows()) throw DimensionMismatch("BoxClp: b size != A row count");
    if (c.size() != n) throw DimensionMismatch("BoxClp: c size != box ambient dimension");
    if (!all_finite(a.data()) || !all_finite(b) || !all_finite(c))
        throw std::invalid_argument("BoxClp: data must be finite");
}

LiftedSystem::LiftedSystem(const BoxClp& p) : b_(p.b), m_(p.a.rows()) {
    const std::size_t n = p.ambient_dim();
    abar_ = DenseMatrix(m_ + 1, n);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < n; ++j) abar_(i, j) = p.a(i, j);
    for (std::size_t j = 0; j < n; ++j) abar_(m_, j) = p.c[j];
}

Vector LiftedSystem::bbar(double gamma) const {
    Vector out(m_ + 1);
    for (std::size_t i = 0; i < m_; ++i) out[i] = b_[i];
    out[m_] = gamma;
    return out;
}

LiftedSystem::Residual LiftedSystem::residual(std::span<const double> x, double gamma) const {
    if (x.size() != ambient_dim())
        throw DimensionMismatch("residual: x size != ambient dimension");
    const Vector img = abar_.apply(x);
    Residual r;
    r.z.assign(img.begin(), img.end() - 1);
    r.zeta = img.back();
    double acc = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
        const double d = img[i] - b_[i];
        acc += d * d;
    }
    const double dz = r.zeta - gamma;
    r.dist = std::sqrt(acc + dz * dz);
    return r;
}

LiftedSystem lift(const BoxClp& p) { return LiftedSystem(p); }

}  // namespace cbn
