// cbn - Newton-type solver for conic linear programs over conic boxes
// Copyright 2026 cbn contributors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cbn/cones.hpp"
#include "cbn/linalg.hpp"
#include "cbn/model.hpp"

namespace cbn {

// Active set for the minimum-norm-point iteration: box points, their lifted
// images Abar * p, and the convex coefficients of the current iterate.
struct Corral {
    std::vector<Vector> points;
    std::vector<Vector> images;
    Vector coeffs;

    std::size_t size() const { return points.size(); }
};

// Unconstrained minimizer of || y - target ||_2 over the affine hull of the
// corral images, returned with its barycentric coefficients (which may be
// negative).
struct AffineMin {
    Vector point;   // in image space
    Vector coeffs;  // barycentric, sums to 1
};
AffineMin affine_minimize(const Corral& corral, std::span<const double> target);

// Move from the convex iterate with coefficients prev_coeffs toward an
// affine minimizer with negative coefficients: the largest step that stays
// inside the convex hull, followed by pruning of vanished points
// (coefficients <= 1e-12).
struct HullStep {
    double lambda_hat = 0.0;
    Corral corral;
};
HullStep line_search_to_hull(const Corral& corral, std::span<const double> prev_coeffs,
                             std::span<const double> new_coeffs);

enum class MnpTermination { Converged, IterCap, Stalled };

struct MnpIterRecord {
    double dist = 0.0;           // || Abar x - target ||
    double gap = 0.0;            // Frank-Wolfe gap after the oracle call
    std::size_t corral_size = 0;  // members after pruning, before the new atom
};

struct MnpConfig {
    double eps = 1e-7;              // stop when the Frank-Wolfe gap drops below this
    std::size_t max_major = 5000;   // oracle iterations
    std::size_t minor_factor = 10;  // inner cycles per major step <= factor * (m + 2)
    bool log_iterations = false;
};

struct MnpResult {
    Vector x_hat;  // box point whose image is the projection iterate
    Vector proj;   // Abar * x_hat
    double dist = 0.0;
    double gap = 0.0;
    std::size_t oracle_calls = 0;
    std::size_t affine_solves = 0;
    std::size_t major_iterations = 0;
    MnpTermination termination = MnpTermination::Converged;
    std::vector<MnpIterRecord> iterations;  // filled when cfg.log_iterations
};

// Project target onto Zbar = Abar * box by Wolfe's minimum-norm-point
// iteration, using the box oracle for the linear subproblems. start must be
// a point of the box (any point; warm starts reuse the previous outer
// iterate). Termination: Converged (gap < eps), IterCap (budget exhausted),
// or Stalled (no numerical progress possible).
MnpResult mnp_project(const LiftedSystem& sys, const BoxOracle& oracle,
                      std::span<const double> target, Vector start, const MnpConfig& cfg);

// Convenience overload that builds the oracle (and its caches) on the fly.
MnpResult mnp_project(const LiftedSystem& sys, const ConicBox& box,
                      std::span<const double> target, Vector start, const MnpConfig& cfg);

}  // namespace cbn
