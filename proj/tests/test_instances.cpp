// cbn - Newton-type solver for conic linear programs over conic boxes
// Copyright 2026 cbn contributors
// Licensed under the Apache License, Version 2.0

#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "cbn/instances.hpp"
#include "cbn/newton.hpp"
#include "helpers.hpp"

using cbn::BoxClp;
using cbn::Vector;

namespace {

bool same_instance(const BoxClp& a, const BoxClp& b) {
    if (a.a.data() != b.a.data()) return false;
    if (a.b != b.b || a.c != b.c) return false;
    if (!(a.box.cone() == b.box.cone())) return false;
    return a.box.lower() == b.box.lower() && a.box.upper() == b.box.upper();
}

void check_midpoint_certificate(const BoxClp& p) {
    Vector mid(p.ambient_dim());
    for (std::size_t i = 0; i < mid.size(); ++i)
        mid[i] = 0.5 * (p.box.lower()[i] + p.box.upper()[i]);
    CHECK(p.box.contains_point(mid, 1e-10));
    CHECK(cbn::distance2(p.a.apply(mid), p.b) <= 1e-10);
}

}  // namespace

TEST_CASE("gen_socp builds a valid Lorentz box with the midpoint certificate") {
    const BoxClp p = cbn::gen_socp(20, 5, 7);
    REQUIRE(p.box.cone().kind() == cbn::ConeKind::Lorentz);
    CHECK(p.ambient_dim() == 21);
    CHECK(p.rows() == 5);
    CHECK(p.box.upper()[0] == doctest::Approx(10.0).epsilon(1e-14));
    for (double v : p.box.lower()) CHECK(v == 0.0);
    // The tail is strictly inside the ball of radius u0.
    Vector tail(p.box.upper().begin() + 1, p.box.upper().end());
    CHECK(cbn::norm2(tail) <= 10.0);
    CHECK(cbn::contains(p.box.cone(), p.box.upper(), 1e-12));
    for (double v : p.c) CHECK((v >= -0.5 && v <= 0.5));
    for (double v : p.a.data()) CHECK((v >= 0.0 && v <= 1.0));
    check_midpoint_certificate(p);
    // b is exactly half of A u when l = 0.
    const Vector au = p.a.apply(p.box.upper());
    for (std::size_t i = 0; i < p.b.size(); ++i)
        CHECK(p.b[i] == doctest::Approx(0.5 * au[i]).epsilon(1e-15));
}

TEST_CASE("gen_socp is deterministic in the seed") {
    CHECK(same_instance(cbn::gen_socp(15, 4, 3), cbn::gen_socp(15, 4, 3)));
    CHECK_FALSE(same_instance(cbn::gen_socp(15, 4, 3), cbn::gen_socp(15, 4, 4)));
}

TEST_CASE("gen_sdp: positive definite width, trace 10, exact midpoint target") {
    const BoxClp p = cbn::gen_sdp(6, 4, 11);
    REQUIRE(p.box.cone().kind() == cbn::ConeKind::Psd);
    CHECK(p.ambient_dim() == 21);  // 6*7/2
    const cbn::DenseMatrix u_mat = cbn::smat(p.box.upper());
    const cbn::SymEig eig = cbn::sym_eig(u_mat);
    CHECK(eig.values.back() > 0.0);
    double trace = 0.0;
    for (std::size_t i = 0; i < 6; ++i) trace += u_mat(i, i);
    CHECK(std::abs(trace - 10.0) <= 1e-12);
    check_midpoint_certificate(p);
}

TEST_CASE("gen_sdp is deterministic in the seed") {
    CHECK(same_instance(cbn::gen_sdp(5, 3, 9), cbn::gen_sdp(5, 3, 9)));
}

TEST_CASE("gen_orthant_lp mirrors the box protocol on the orthant") {
    const BoxClp p = cbn::gen_orthant_lp(12, 4, 5);
    REQUIRE(p.box.cone().kind() == cbn::ConeKind::Orthant);
    for (double v : p.box.lower()) CHECK(v == 0.0);
    for (double v : p.box.upper()) CHECK(v >= 0.0);
    check_midpoint_certificate(p);
    CHECK(same_instance(cbn::gen_orthant_lp(12, 4, 5), cbn::gen_orthant_lp(12, 4, 5)));
}

TEST_CASE("gen_infeasible pushes b beyond every row's reachable range") {
    for (cbn::Family family :
         {cbn::Family::OrthantLp, cbn::Family::Socp, cbn::Family::Sdp}) {
        cbn::GenSpec spec;
        spec.family = family;
        spec.n = family == cbn::Family::Sdp ? 4 : 10;
        spec.m = 3;
        spec.seed = 2;
        spec.infeasible = true;
        const BoxClp p = cbn::generate(spec);
        // Row-by-row: even the box maximum of <a_i, x> stays below b_i.
        for (std::size_t i = 0; i < p.rows(); ++i) {
            Vector row(p.ambient_dim());
            for (std::size_t j = 0; j < row.size(); ++j) row[j] = p.a(i, j);
            const auto best = cbn::linopt_box(p.box, row);
            CHECK(best.value < p.b[i] - 0.5);
        }
    }
}

TEST_CASE("solver certifies the constructed infeasibility") {
    cbn::GenSpec spec;
    spec.family = cbn::Family::OrthantLp;
    spec.n = 2;
    spec.m = 1;
    spec.seed = 1;
    spec.infeasible = true;
    const auto status = cbn::solve(cbn::generate(spec));
    CHECK(status.kind == cbn::SolveKind::Infeasible);
}

TEST_CASE("family name round trip") {
    CHECK(cbn::family_from_string("socp") == cbn::Family::Socp);
    CHECK(cbn::family_from_string("sdp") == cbn::Family::Sdp);
    CHECK(cbn::family_from_string("orthant") == cbn::Family::OrthantLp);
    CHECK(cbn::family_from_string("lp") == cbn::Family::OrthantLp);
    CHECK(cbn::to_string(cbn::Family::Socp) == std::string("socp"));
    CHECK(cbn::to_string(cbn::Family::Sdp) == std::string("sdp"));
    CHECK(cbn::to_string(cbn::Family::OrthantLp) == std::string("orthant"));
    CHECK_THROWS_AS(cbn::family_from_string("qp"), std::invalid_argument);
}

TEST_CASE("generate dispatches on the family") {
    cbn::GenSpec spec;
    spec.family = cbn::Family::Socp;
    spec.n = 8;
    spec.m = 2;
    spec.seed = 3;
    CHECK(same_instance(cbn::generate(spec), cbn::gen_socp(8, 2, 3)));
    spec.family = cbn::Family::Sdp;
    spec.n = 4;
    CHECK(same_instance(cbn::generate(spec), cbn::gen_sdp(4, 2, 3)));
}
