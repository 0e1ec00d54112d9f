// cbn - Newton-type solver for conic linear programs over conic boxes
// Copyright 2026 cbn contributors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <stdexcept>
#include <string>

namespace cbn {

// Input sizes violate an operation's contract.
struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& msg) : std::invalid_argument(msg) {}
};

// A matrix required to be positive semidefinite has a significantly
// negative eigenvalue.
struct NotPsd : std::runtime_error {
    explicit NotPsd(const std::string& msg) : std::runtime_error(msg) {}
};

// An iterative kernel exhausted its sweep budget without meeting its
// convergence threshold.
struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& msg) : std::runtime_error(msg) {}
};

// The box width u - l is zero (or otherwise unusable) where a
// nondegenerate box is required.
struct DegenerateBox : std::runtime_error {
    explicit DegenerateBox(const std::string& msg) : std::runtime_error(msg) {}
};

// A line search produced no movement twice in a row; the inner solver
// cannot make further progress at the current precision.
struct NumericalStall : std::runtime_error {
    explicit NumericalStall(const std::string& msg) : std::runtime_error(msg) {}
};

// A Newton denominator fell below its guard threshold; the caller must
// decide between the optimality and infeasibility readings instead of
// dividing.
struct DivisionGuard : std::runtime_error {
    explicit DivisionGuard(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cbn
