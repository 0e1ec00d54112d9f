// cbn - Newton-type solver for conic linear programs over conic boxes
// Copyright 2026 cbn contributors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <string>

#include "cbn/model.hpp"

namespace cbn {

// Random instance families. All generators are deterministic in the seed
// and produce midpoint-feasible problems (b = A * (l + u)/2) except the
// infeasible wrapper, which pushes b strictly beyond the reachable range
// of every row.
enum class Family { OrthantLp, Socp, Sdp };

struct GenSpec {
    Family family = Family::Socp;
    std::size_t n = 10;  // cone parameter: orthant/Lorentz dimension or PSD side
    std::size_t m = 4;   // constraint rows
    std::uint64_t seed = 1;
    bool infeasible = false;
};

// Lorentz-cone family: box [0, u] with u0 = 10 and a uniformly random
// tail direction scaled to a random norm in [0, 10]; c uniform in
// [-0.5, 0.5]; A uniform in [0, 1]; b targets the box midpoint.
BoxClp gen_socp(std::size_t n, std::size_t m, std::uint64_t seed);

// PSD family: box [0, svec(U)] with U = (V V^T + I/10) normalized to
// trace 10; C symmetric uniform in [-0.5, 0.5]; A uniform in [0, 1] acting
// on svec coordinates; b targets the box midpoint.
BoxClp gen_sdp(std::size_t n, std::size_t m, std::uint64_t seed);

// Coordinatewise analogue of the Lorentz family on the nonnegative orthant.
BoxClp gen_orthant_lp(std::size_t n, std::size_t m, std::uint64_t seed);

// Replace b with A u + (1 + ||A||_1 * ||u||_inf) * 1, where ||A||_1 is the
// entrywise 1-norm; every row then exceeds its maximum over the box, so the
// instance is infeasible by construction.
BoxClp gen_infeasible(const BoxClp& base);

BoxClp generate(const GenSpec& spec);

const char* to_string(Family family);
Family family_from_string(const std::string& name);

}  // namespace cbn
