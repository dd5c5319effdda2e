#include "sigsurf/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sigsurf/parallel.hpp"
#include "sigsurf/quadrature.hpp"

namespace sigsurf {

namespace {

const cd I(0.0, 1.0);

void require_q(double q, const GeometryOptions& o) {
    if (!(q > o.q_eps)) throw GeometryError("degenerate metric: q below threshold");
}

// real partials in xi = xi1 + i xi2 from Wirtinger jets
struct Real2 {
    double v, u, w, uu, uw, ww;  // f, f_1, f_2, f_11, f_12, f_22
};

Real2 real_partials(const Jet& j) {
    const cd a = j.d(1, 0), b = j.d(0, 1);
    const cd aa = j.d(2, 0), ab = j.d(1, 1), bb = j.d(0, 2);
    return {j.value().real(),       (a + b).real(),         (I * (a - b)).real(),
            (aa + 2.0 * ab + bb).real(), (I * (aa - bb)).real(), (-(aa - 2.0 * ab + bb)).real()};
}

}  // namespace

MetricSample metric(const PointModel& m) {
    MetricSample s;
    s.g_xx = -m.J.value();
    s.g_bb = -m.Jb.value();
    s.g_xb = m.q.value().real();
    s.det = (m.J.value() * m.Jb.value()).real() - s.g_xb * s.g_xb;
    return s;
}

MetricSample metric_at(const SolutionEvaluator& ev, cd xi) {
    const FirstOrderModel m = first_order_at(ev, xi);
    return {-m.J, -m.Jb, m.q, (m.J * m.Jb).real() - m.q * m.q};
}

bool is_conformal(const PointModel& m, const GeometryOptions& o) {
    return std::abs(m.J.value()) < o.j_scale * (1.0 + std::abs(m.q.value()));
}

double gaussian_curvature_conformal(const PointModel& m, const GeometryOptions& o) {
    require_q(m.q.value().real(), o);
    const Jet lq = log(m.q);
    return (-lq.d(1, 1) / m.q.value()).real();
}

double gaussian_curvature_general(const PointModel& m, const GeometryOptions& o) {
    require_q(m.q.value().real(), o);
    const Jet g = m.J * m.Jb - m.q * m.q;
    if (std::abs(g.value()) < o.det_eps) throw GeometryError("degenerate metric: det g vanishes");
    if (std::abs(m.J.value()) < o.j_scale * (1.0 + std::abs(m.q.value())))
        throw GeometryError("general curvature formula needs J != 0");
    const Jet sg = sqrt(g);
    const Jet lnr = log(-(m.q * m.q) / m.J);
    const Jet inner = (m.q / sg) * lnr.dxi();
    return (inner.dxibar().value() / (2.0 * sg.value())).real();
}

double gaussian_curvature_brioschi(const PointModel& m, const GeometryOptions& o) {
    require_q(m.q.value().real(), o);
    const Real2 E = real_partials(2.0 * m.q - m.J - m.Jb);
    const Real2 F = real_partials(I * (m.Jb - m.J));
    const Real2 G = real_partials(2.0 * m.q + m.J + m.Jb);
    const double W = E.v * G.v - F.v * F.v;
    if (std::abs(W) < o.det_eps) throw GeometryError("degenerate metric: det g vanishes");
    Eigen::Matrix3d A, B;
    A << -0.5 * E.ww + F.uw - 0.5 * G.uu, 0.5 * E.u, F.u - 0.5 * E.w,
         F.w - 0.5 * G.u, E.v, F.v,
         0.5 * G.w, F.v, G.v;
    B << 0.0, 0.5 * E.w, 0.5 * G.u,
         0.5 * E.w, E.v, F.v,
         0.5 * G.u, F.v, G.v;
    return (A.determinant() - B.determinant()) / (W * W);
}

double gaussian_curvature(const PointModel& m, const GeometryOptions& o) {
    return is_conformal(m, o) ? gaussian_curvature_conformal(m, o) : gaussian_curvature_general(m, o);
}

double gaussian_curvature_at(const SolutionEvaluator& ev, cd xi, const GeometryOptions& o) {
    return gaussian_curvature(model_at(ev, xi), o);
}

double gaussian_curvature_fd(const SolutionEvaluator& ev, cd xi) {
    const double h = 1e-4 * (1.0 + std::abs(xi));
    auto lq = [&](cd z) { return std::log(first_order_at(ev, z).q); };
    const double c = lq(xi);
    const double lap = (lq(xi + h) + lq(xi - h) + lq(xi + I * h) + lq(xi - I * h) - 4.0 * c) / (h * h);
    const double q = std::exp(c);
    return -0.25 * lap / q;
}

XDerivatives x_derivatives(const PointModel& m) {
    XDerivatives x;
    x.d = I * m.Kd.value();
    x.db = I * m.K.value();
    x.dd = I * m.Kd.d(1, 0);
    x.dbdb = I * m.K.d(0, 1);
    x.ddb = I * m.K.d(1, 0);
    x.ddb_alt = I * m.Kd.d(0, 1);
    return x;
}

Mat mean_curvature(const PointModel& m, const GeometryOptions& o) {
    const double q = m.q.value().real();
    require_q(q, o);
    return (2.0 / q) * x_derivatives(m).ddb;
}

Mat mean_curvature_at(const SolutionEvaluator& ev, cd xi, const GeometryOptions& o) {
    return mean_curvature(model_at(ev, xi, 2), o);
}

SecondFundamentalForm second_fundamental_form(const PointModel& m, const GeometryOptions& o) {
    const double q = m.q.value().real();
    require_q(q, o);
    const XDerivatives x = x_derivatives(m);
    SecondFundamentalForm s;
    s.c_xx = x.dd - (m.q.d(1, 0) / q) * x.d;
    s.c_xb = x.ddb;
    s.c_bb = x.dbdb - (m.q.d(0, 1) / q) * x.db;
    for (const Mat* c : {&s.c_xx, &s.c_bb})
        for (const Mat* t : {&x.d, &x.db}) s.tangential = std::max(s.tangential, std::abs(inner(*c, *t)));
    s.constraints = std::max(std::abs(inner(x.dd, x.ddb)), std::abs(inner(x.dbdb, x.ddb)));
    return s;
}

GeometrySample geometry_sample(const SolutionEvaluator& ev, cd xi, const GeometryOptions& o) {
    const PointModel m = model_at(ev, xi);
    GeometrySample s;
    s.xi = xi;
    s.q = m.q.value().real();
    s.J = m.J.value();
    s.Jb = m.Jb.value();
    s.det = metric(m).det;
    s.conformal = is_conformal(m, o);
    s.K = gaussian_curvature(m, o);
    s.H_norm = s.conformal ? mean_curvature(m, o).norm() : std::numeric_limits<double>::quiet_NaN();
    s.gamma111 = m.q.d(1, 0) / s.q;
    s.gamma222 = m.q.d(0, 1) / s.q;
    s.el = el_residual(m).max();
    return s;
}

std::vector<GeometrySample> geometry_grid(const SolutionEvaluator& ev, const std::vector<cd>& pts,
                                          const GeometryOptions& o) {
    std::vector<GeometrySample> out(pts.size());
    parallel_for(pts.size(), [&](std::size_t k) { out[k] = geometry_sample(ev, pts[k], o); });
    return out;
}

Mat willmore_integrand_matrix(const FirstOrderModel& m) {
    const Mat C = m.dP * m.dbP - m.dbP * m.dP;
    return (-4.0 * I / m.q) * (C * C);
}

cd willmore_density(const FirstOrderModel& m) { return -0.5 * willmore_integrand_matrix(m).trace(); }

namespace {
void finish(IntegralReport& r) {
    r.value = r.levels.back();
    r.rel_change = r.levels.size() < 2 ? std::numeric_limits<double>::infinity()
                                       : std::abs(r.levels.back() - r.levels[r.levels.size() - 2]) /
                                             std::max(std::abs(r.levels.back()), 1e-300);
}
}  // namespace

IntegralReport willmore(const SolutionEvaluator& ev, const GridSpec& region, int resolution, int levels, double c) {
    IntegralReport r;
    const double x0 = region.center.real() - region.half_width, x1 = region.center.real() + region.half_width;
    const double y0 = region.center.imag() - region.half_width, y1 = region.center.imag() + region.half_width;
    for (int l = 0, n = resolution; l < levels; ++l, n *= 2) {
        auto f = [&](double x, double y) { return c * willmore_density(first_order_at(ev, cd(x, y))); };
        r.levels.push_back(integrate_tensor<cd>(f, x0, x1, n, y0, y1, n, cd(0.0)));
    }
    finish(r);
    return r;
}

IntegralReport topological_charge(const SolutionEvaluator& ev, int resolution, int levels, double c) {
    IntegralReport r;
    const double tp = 2.0 * std::numbers::pi;
    for (int l = 0, n = resolution; l < levels; ++l, n *= 2) {
        auto inside = [&](double rho, double t) {
            return first_order_at(ev, std::polar(rho, t)).q * rho;
        };
        auto outside = [&](double rho, double t) {
            const cd zeta = std::polar(rho, t);
            const double a2 = rho * rho;
            return first_order_at(ev, 1.0 / zeta).q / (a2 * a2) * rho;
        };
        const double s = integrate_tensor<double>(inside, 0.0, 1.0, n, 0.0, tp, 4 * n, 0.0) +
                         integrate_tensor<double>(outside, 0.0, 1.0, n, 0.0, tp, 4 * n, 0.0);
        r.levels.push_back(-c / (8.0 * std::numbers::pi) * s);
    }
    finish(r);
    return r;
}

}  // namespace sigsurf
