// cbn - Newton-type solver for conic linear programs over conic boxes
// Copyright 2026 cbn contributors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cbn/model.hpp"

namespace cbn {

// Generation metadata carried inside instance files (optional).
struct Provenance {
    std::string family;
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
};

// JSON instance format, format_version 1: cone spec, dense row-major A,
// b, c, l, u, optional provenance. Numeric fields round-trip bit-exactly
// for finite doubles.
std::string instance_to_json(const BoxClp& p,
                             const std::optional<Provenance>& prov = std::nullopt);
BoxClp instance_from_json(const std::string& text,
                          std::optional<Provenance>* prov_out = nullptr);

void save_instance(const std::string& path, const BoxClp& p,
                   const std::optional<Provenance>& prov = std::nullopt);
BoxClp load_instance(const std::string& path,
                     std::optional<Provenance>* prov_out = nullptr);

}  // namespace cbn
