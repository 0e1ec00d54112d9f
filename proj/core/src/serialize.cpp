// cbn - Newton-type solver for conic linear programs over conic boxes
// Copyright 2026 cbn contributors
// Licensed under the Apache License, Version 2.0

#include "cbn/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "cbn/errors.hpp"

namespace cbn {

namespace {

using Json = nlohmann::ordered_json;

Json cone_to_json(const Cone& cone) {
    Json j;
    switch (cone.kind()) {
        case ConeKind::Orthant:
            j["kind"] = "orthant";
            j["n"] = cone.order();
            break;
        case ConeKind::Lorentz:
            j["kind"] = "lorentz";
            j["n"] = cone.order();
            break;
        case ConeKind::Psd:
            j["kind"] = "psd";
            j["n"] = cone.order();
            break;
        case ConeKind::Product: {
            j["kind"] = "product";
            Json blocks = Json::array();
            for (const Cone& b : cone.blocks()) blocks.push_back(cone_to_json(b));
            j["blocks"] = std::move(blocks);
            break;
        }
    }
    return j;
}

Cone cone_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "orthant") return Cone::orthant(j.at("n").get<std::size_t>());
    if (kind == "lorentz") return Cone::lorentz(j.at("n").get<std::size_t>());
    if (kind == "psd") return Cone::psd(j.at("n").get<std::size_t>());
    if (kind == "product") {
        std::vector<Cone> blocks;
        for (const Json& b : j.at("blocks")) blocks.push_back(cone_from_json(b));
        return Cone::product(std::move(blocks));
    }
    throw std::invalid_argument("instance: unknown cone kind '" + kind + "'");
}

}  // namespace

std::string instance_to_json(const BoxClp& p, const std::optional<Provenance>& prov) {
    Json j;
    j["format_version"] = 1;
    j["cone"] = cone_to_json(p.box.cone());
    j["m"] = p.rows();
    j["A"] = p.a.data();
    j["b"] = p.b;
    j["c"] = p.c;
    j["l"] = p.box.lower();
    j["u"] = p.box.upper();
    if (prov) {
        Json pj;
        pj["family"] = prov->family;
        pj["n"] = prov->n;
        pj["m"] = prov->m;
        pj["seed"] = prov->seed;
        j["provenance"] = std::move(pj);
    }
    return j.dump(2) + "\n";
}

BoxClp instance_from_json(const std::string& text, std::optional<Provenance>* prov_out) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("instance: JSON parse error: ") + e.what());
    }
    try {
        const int version = j.at("format_version").get<int>();
        if (version != 1)
            throw std::invalid_argument("instance: unsupported format_version");
        Cone cone = cone_from_json(j.at("cone"));
        const std::size_t m = j.at("m").get<std::size_t>();
        const std::size_t dim = cone.ambient_dim();
        Vector a_data = j.at("A").get<Vector>();
        Vector b = j.at("b").get<Vector>();
        Vector c = j.at("c").get<Vector>();
        Vector l = j.at("l").get<Vector>();
        Vector u = j.at("u").get<Vector>();
        if (a_data.size() != m * dim)
            throw std::invalid_argument("instance: A has wrong entry count");
        DenseMatrix a(m, dim, std::move(a_data));
        if (prov_out) {
            prov_out->reset();
            if (j.contains("provenance")) {
                const Json& pj = j.at("provenance");
                Provenance prov;
                prov.family = pj.value("family", std::string{});
                prov.n = pj.value("n", std::size_t{0});
                prov.m = pj.value("m", std::size_t{0});
                prov.seed = pj.value("seed", std::uint64_t{0});
                *prov_out = std::move(prov);
            }
        }
        return BoxClp(std::move(a), std::move(b), std::move(c),
                      ConicBox(std::move(cone), std::move(l), std::move(u)));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("instance: malformed field: ") + e.what());
    }
}

void save_instance(const std::string& path, const BoxClp& p,
                   const std::optional<Provenance>& prov) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << instance_to_json(p, prov);
    if (!out) throw std::runtime_error("write failed: " + path);
}

BoxClp load_instance(const std::string& path, std::optional<Provenance>* prov_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return instance_from_json(buf.str(), prov_out);
}

}  // namespace cbn
