#include "support.hpp"

#include <sigsurf/basis.hpp>
#include <sigsurf/immersion.hpp>

using namespace sigsurf;
using test::eval;

TEST_CASE("basis: Gell-Mann normalization and coordinate round trip") {
    const auto& s = gellmann();
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) CHECK(std::abs(inner(s[i], s[j]) - (i == j ? 1.0 : 0.0)) < 1e-15);
    const std::vector<double> c{0.1, -0.4, 0.3, 0.9, -0.2, 0.5, 0.05, -0.7};
    const auto back = real_coordinates(from_coordinates(c, Basis::GellMann), Basis::GellMann);
    for (int k = 0; k < 8; ++k) CHECK(std::abs(back[k] - c[k]) < 1e-15);
    const std::vector<double> p{0.3, -0.1, 0.25};
    const auto pb = real_coordinates(from_coordinates(p, Basis::Pauli), Basis::Pauli);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(pb[k] - p[k]) < 1e-15);
}

TEST_CASE("CP1 w = xi: closed-form coordinates and the sphere of radius 1/2") {
    const auto ev = eval({"xi"});
    for (cd z : {cd(0.3, 0.4), cd(-1.5, 0.2), cd(2.0, -2.0)}) {
        const ImmersionField f = immerse_holomorphic(ev, z);
        const double r = 1.0 + std::norm(z);
        CHECK(std::abs(f.coords[0] - z.real() / r) < 1e-15);
        CHECK(std::abs(f.coords[1] + z.imag() / r) < 1e-15);
        CHECK(std::abs(f.coords[2] + std::norm(z) / r) < 1e-15);
        CHECK(std::abs(sphere_relation_cp1(f.coords)) < 1e-15);
    }
}

TEST_CASE("special solution: affine sphere relation and X4 at xi = 1") {
    const auto ev = eval({"xi", "xi^2/2"});
    const ImmersionField f = immerse_holomorphic(ev, 1.0);
    CHECK(std::abs(f.coords[3] + 5.0 * std::sqrt(3.0) / 18.0) < 1e-15);
    for (cd z : {cd(0.4, -0.3), cd(1.2, 0.9)})
        CHECK(std::abs(affine_sphere_relation_cp2(immerse_holomorphic(ev, z).coords)) < 1e-14);
}

TEST_CASE("path integral reproduces -iP differences") {
    const auto ev = eval({"xi", "xi^2/2"});
    const cd a(0.2, 0.0), b(0.9, 0.7);
    const ImmersionField p = immerse_by_path(ev, PathSpec::straight(a, b));
    const Mat d = immerse_holomorphic(ev, b).X - immerse_holomorphic(ev, a).X;
    CHECK((p.X - d).norm() < 1e-9);
    CHECK(p.error_estimate < 1e-9);
    CHECK((p.X + p.X.adjoint()).norm() < 1e-14);
}

TEST_CASE("soliton: closed 1-form, path independence, X1^2+X6^2+X7^2 = 1") {
    const auto ev = eval(test::kSolitonW, test::kSolitonWb);
    PathSpec up, dn;
    up.waypoints = {0.0, cd(0, 0.8), cd(1.0, 0.5)};
    dn.waypoints = {0.0, cd(0.6, -0.5), cd(1.0, 0.5)};
    const ImmersionField u = immerse_by_path(ev, up), v = immerse_by_path(ev, dn);
    CHECK((u.X - v.X).norm() < 1e-9);
    // closed form at the base: X1 = 1, everything else 0
    std::vector<double> c = u.coords;
    c[0] += 1.0;
    CHECK(std::abs(soliton_relation(c)) < 1e-10);
}

TEST_CASE("Proposition-1 pieces on the soliton") {
    const auto ev = eval(test::kSolitonW, test::kSolitonWb);
    PathSpec p = PathSpec::straight(0.0, cd(0.7, 0.4));
    const DCImmersion dc = immerse_dc_simplified(ev, p);
    const ImmersionField k = immerse_by_path(ev, p);
    CHECK((dc.XL + dc.XM - k.X).norm() < 1e-9);
    const Mat dP = projector_at(ev, cd(0.7, 0.4)) - projector_at(ev, 0.0);
    CHECK((dc.XL - dc.XM - cd(0, 1) * dP).norm() < 1e-9);
    CHECK(dc.max_dc < 1e-12);
}

TEST_CASE("paths through declared singularities are refused") {
    const auto ev = eval({"1/xi"});
    PathSpec p = PathSpec::straight(cd(-1, 0), cd(1, 0));
    p.singularities = {0.0};
    CHECK_THROWS_AS(immerse_by_path(ev, p), ImmersionError);
}

TEST_CASE("generic forms integrate like the K-form") {
    const auto ev = eval({"xi", "xi^2/2"});
    const PathSpec p = PathSpec::straight(cd(0.1, 0.1), cd(0.5, -0.6));
    const ImmersionField a = integrate_form(ev, p, [](const FirstOrderModel& m, Mat& A, Mat& Ad) {
        A = m.K;
        Ad = m.Kd;
    });
    CHECK((a.X - immerse_by_path(ev, p).X).norm() < 1e-13);
}

TEST_CASE("non-splitting relation helper") {
    const double r = std::sqrt(1.0 / 27.0);
    CHECK(nonsplitting_relation({r, 0, 0, 0, r, r, 0, 0}) < 1e-16);
    CHECK(nonsplitting_relation({r, 0, 0, 0, 0, r, 0, 0}) > 1e-2);
}
