#include "support.hpp"

#include <sigsurf/geometry.hpp>

using namespace sigsurf;
using test::eval;

TEST_CASE("constant curvature: sphere K = 4, special solution K = 2, soliton K = 1") {
    const auto cp1 = eval({"xi"}), sp = eval({"xi", "xi^2/2"}), sol = eval(test::kSolitonW, test::kSolitonWb);
    for (cd z : {cd(0.1, 0.2), cd(-0.8, 0.5), cd(1.1, -0.9)}) {
        CHECK(std::abs(gaussian_curvature_at(cp1, z) - 4.0) < 1e-10);
        CHECK(std::abs(gaussian_curvature_at(sp, z) - 2.0) < 1e-10);
        CHECK(std::abs(gaussian_curvature_at(sol, z) - 1.0) < 1e-10);
    }
}

TEST_CASE("curvature formulas agree with each other and with finite differences") {
    const auto mono = eval({"2*xi^2", "(1+i)*xi^3"});
    const auto ns3 = eval({"xi/xibar", "exp(exp(i*pi/3)*ln(xi))/exp(exp(-i*pi/3)*ln(xibar))"});
    for (cd z : {cd(0.7, 0.4), cd(0.5, -0.9)}) {
        const PointModel m = model_at(mono, z);
        const double k = gaussian_curvature(m);
        CHECK(std::abs(gaussian_curvature_brioschi(m) - k) < 1e-9 * (1 + std::abs(k)));
        CHECK(std::abs(gaussian_curvature_fd(mono, z) - k) < 1e-5 * (1 + std::abs(k)));
        CHECK(is_conformal(m));
        // non-splitting N = 3: conformal (I = (2/3)|F'|^2/|F|^2 dxi dxibar) and flat
        const PointModel n = model_at(ns3, z);
        CHECK(is_conformal(n));
        CHECK(std::abs(gaussian_curvature(n)) < 1e-9);
        CHECK(std::abs(gaussian_curvature_brioschi(n)) < 1e-9);
    }
}

TEST_CASE("general curvature formula: preconditions") {
    // every catalog solution with det g != 0 is conformal; the general branch
    // needs J != 0 and a nondegenerate metric
    CHECK_THROWS_AS(gaussian_curvature_general(model_at(eval({"xi", "xi^2/2"}), cd(0.3, 0.2))), GeometryError);
    CHECK_THROWS_AS(gaussian_curvature(model_at(eval({"xi/xibar"}), cd(0.8, 0.3))), GeometryError);
}

TEST_CASE("metric of the non-splitting N = 3 surface, F = xi: I = (2/3)|F'|^2/|F|^2") {
    // q = 1/(3|xi|^2); det g = |J|^2 - q^2 matches the printed determinant
    const auto ns3 = eval({"xi/xibar", "exp(exp(i*pi/3)*ln(xi))/exp(exp(-i*pi/3)*ln(xibar))"});
    const cd z(0.9, 0.6);
    const MetricSample g = metric_at(ns3, z);
    CHECK(std::abs(g.g_xb - 1.0 / (3.0 * std::norm(z))) < 1e-14);
}

TEST_CASE("N = 2 non-splitting: a curve, det g = 0") {
    const MetricSample g = metric_at(eval({"xi/xibar"}), cd(0.8, 0.3));
    CHECK(std::abs(g.det) < 1e-14);
    CHECK(g.g_xb > 0);
}

TEST_CASE("mean curvature is normal; second derivatives of X commute") {
    for (auto ev : {eval({"xi", "xi^2/2"}), eval(test::kSolitonW, test::kSolitonWb)}) {
        const PointModel m = model_at(ev, cd(0.3, 0.6));
        const XDerivatives x = x_derivatives(m);
        CHECK((x.ddb - x.ddb_alt).norm() < 1e-13);
        const Mat H = mean_curvature(m);
        CHECK(std::abs(inner(H, x.d)) < 1e-13);
        CHECK(std::abs(inner(H, x.db)) < 1e-13);
        const SecondFundamentalForm sff = second_fundamental_form(m);
        CHECK(sff.tangential < 1e-12);
        CHECK(sff.constraints < 1e-12);
    }
}

TEST_CASE("geometry sample layout") {
    const auto sp = eval({"xi", "xi^2/2"});
    const auto g = geometry_grid(sp, grid_points({0.0, 1.0, 3}));
    REQUIRE(g.size() == 9);
    CHECK(g[0].xi == cd(-1, -1));
    CHECK(g[1].xi == cd(0, -1));  // real part fastest
    for (const auto& s : g) {
        CHECK(s.conformal);
        CHECK(std::abs(s.det + s.q * s.q) < 1e-15);
    }
}

TEST_CASE("degenerate metric is reported") {
    CHECK_THROWS_AS(gaussian_curvature_at(eval({"1+0*xi"}), cd(0.3)), GeometryError);
}

TEST_CASE("topological charge proportional to degree") {
    const IntegralReport a = topological_charge(eval({"xi"}), 4, 3);
    const IntegralReport b = topological_charge(eval({"xi^2"}), 4, 3);
    CHECK(std::abs(b.value / a.value - 2.0) < 1e-6);
    CHECK(a.rel_change < 1e-8);
    // c = 2 normalization: Q(xi) = -(2/8pi) * pi/2 = -1/8
    CHECK(std::abs(a.value + 0.125) < 1e-8);
}

TEST_CASE("Willmore integrand is Hermitian-scalar: purely imaginary and finite") {
    const auto sp = eval({"xi", "xi^2/2"});
    const cd w = willmore_density(first_order_at(sp, cd(0.2, 0.3)));
    CHECK(std::isfinite(w.imag()));
    CHECK(std::abs(w.real()) < 1e-13 * (1 + std::abs(w)));
    const IntegralReport r = willmore(sp, {0.0, 1.0, 3}, 2, 3);
    CHECK(r.rel_change < 1e-6);
}
