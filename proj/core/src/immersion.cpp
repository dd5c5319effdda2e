#include "sigsurf/immersion.hpp"

#include <cmath>

#include "sigsurf/quadrature.hpp"

namespace sigsurf {

namespace {

double segment_distance(cd a, cd b, cd p) {
    const cd d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(a + t * d - p);
}

void check_path(const PathSpec& path) {
    if (path.waypoints.empty()) throw ImmersionError("path has no waypoints");
    for (std::size_t k = 0; k < path.waypoints.size(); ++k)
        for (cd s : path.singularities) {
            const cd a = path.waypoints[k];
            const cd b = k + 1 < path.waypoints.size() ? path.waypoints[k + 1] : a;
            if (segment_distance(a, b, s) < path.singularity_radius)
                throw ImmersionError("path passes through a declared singularity");
        }
}

std::vector<double> coords_or_empty(const Mat& X) {
    const int N = int(X.rows());
    if (N != 2 && N != 3) return {};
    return real_coordinates(X, default_basis(N));
}

}  // namespace

ImmersionField immerse_holomorphic(const SolutionEvaluator& ev, cd xi, double tol) {
    const FirstOrderModel m = first_order_at(ev, xi);
    double dbar = 0, d = 0;
    for (const auto& w : m.fields.w) {
        dbar = std::max(dbar, std::abs(w.d(0, 1)));
        d = std::max(d, std::abs(w.d(1, 0)));
    }
    double sign;
    if (dbar < tol)
        sign = -1.0;
    else if (d < tol)
        sign = 1.0;
    else
        throw ImmersionError("closed-form immersion needs a holomorphic or anti-holomorphic solution");
    const int N = m.N;
    Mat P0 = Mat::Identity(N, N);
    P0(0, 0) = 0.0;
    ImmersionField r;
    r.point = xi;
    r.base = xi;
    r.X = sign * cd(0, 1) * m.P;
    r.coords = coords_or_empty(sign * cd(0, 1) * (m.P - P0));
    return r;
}

ImmersionField integrate_form(const SolutionEvaluator& ev, const PathSpec& path, const FormFn& form) {
    check_path(path);
    const int N = ev.N();
    const Mat zero = Mat::Zero(N, N);
    ImmersionField r;
    r.base = path.waypoints.front();
    r.point = path.waypoints.back();
    r.X = zero;
    auto norm = [](const Mat& m) { return m.norm(); };
    for (std::size_t k = 0; k + 1 < path.waypoints.size(); ++k) {
        const cd a = path.waypoints[k], dz = path.waypoints[k + 1] - a;
        if (dz == 0.0) continue;
        auto f = [&](double t) -> Mat {
            const FirstOrderModel m = first_order_at(ev, a + t * dz);
            Mat A, Ad;
            form(m, A, Ad);
            return cd(0, 1) * (Ad * dz + A * std::conj(dz));
        };
        const auto q = integrate_adaptive<Mat>(f, 0.0, 1.0, zero, norm, path.tol, path.max_depth);
        r.X += q.value;
        r.error_estimate += q.error;
        r.panels += q.panels;
    }
    r.coords = coords_or_empty(r.X);
    return r;
}

ImmersionField immerse_by_path(const SolutionEvaluator& ev, const PathSpec& path) {
    return integrate_form(ev, path, [](const FirstOrderModel& m, Mat& A, Mat& Ad) {
        A = m.K;
        Ad = m.Kd;
    });
}

DCImmersion immerse_dc_simplified(const SolutionEvaluator& ev, const PathSpec& path, double dc_tol) {
    DCImmersion r;
    double worst = 0;
    auto track = [&](const FirstOrderModel& m) {
        cd a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < m.fields.w.size(); ++i) {
            const Jet& w = m.fields.w[i];
            const Jet& wb = m.fields.wb[i];
            a += wb.value() * w.d(1, 0) - wb.d(1, 0) * w.value();
            b += wb.value() * w.d(0, 1) - wb.d(0, 1) * w.value();
        }
        worst = std::max({worst, std::abs(a), std::abs(b)});
    };
    r.XL = integrate_form(ev, path, [&](const FirstOrderModel& m, Mat& A, Mat& Ad) {
               track(m);
               const Mat Q = Mat::Identity(m.N, m.N) - m.P;
               A = Q * m.dbP;
               Ad = m.dP * Q;
           }).X;
    r.XM = integrate_form(ev, path, [&](const FirstOrderModel& m, Mat& A, Mat& Ad) {
               const Mat Q = Mat::Identity(m.N, m.N) - m.P;
               A = -m.dbP * Q;
               Ad = -Q * m.dP;
           }).X;
    r.max_dc = worst;
    if (worst > dc_tol) throw ImmersionError("differential constraints violated along the path");
    return r;
}

double sphere_relation_cp1(const std::vector<double>& c) {
    return c.at(0) * c[0] + c.at(1) * c[1] + (c.at(2) + 0.5) * (c[2] + 0.5) - 0.25;
}

double affine_sphere_relation_cp2(const std::vector<double>& c) {
    double s = 4.0 * (c.at(0) * c[0] + c.at(1) * c[1] + c.at(2) * c[2]) + 2.0 / std::sqrt(3.0) * c.at(3);
    for (int k = 4; k < 8; ++k) s += c.at(k) * c[k];
    return s;
}

double soliton_relation(const std::vector<double>& c) { return c.at(0) * c[0] + c.at(5) * c[5] + c.at(6) * c[6] - 1.0; }

double nonsplitting_relation(const std::vector<double>& c) {
    const double t = 1.0 / 27.0;
    return std::max({std::abs(c.at(0) * c[0] + c.at(1) * c[1] - t), std::abs(c.at(4) * c[4] + c.at(6) * c[6] - t),
                     std::abs(c.at(5) * c[5] + c.at(7) * c[7] - t)});
}

}  // namespace sigsurf
