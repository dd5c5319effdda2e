#pragma once

#include "sigsurf/grid.hpp"
#include "sigsurf/model.hpp"

namespace sigsurf {

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GeometryOptions {
    double q_eps = 1e-10;        // below this the metric is degenerate
    double j_scale = 1e-12;      // conformal branch when |J| < j_scale (1 + q)
    double det_eps = 1e-14;      // |det g| floor for the general branch
};

struct MetricSample {
    cd g_xx, g_bb;   // -J, -Jbar
    double g_xb = 0; // q
    double det = 0;  // |J|^2 - q^2
};

// dX = i K^dagger, dbar X = i K and their second derivatives.
struct XDerivatives {
    Mat d, db;        // dX, dbar X
    Mat dd, dbdb;     // d^2 X, dbar^2 X
    Mat ddb;          // d dbar X = i dK
    Mat ddb_alt;      // dbar d X = i dbar K^dagger (equal on solutions)
};

struct SecondFundamentalForm {
    Mat c_xx, c_xb, c_bb;       // coefficients of dxi^2, dxi dxibar, dxibar^2
    double tangential = 0;      // max |<c_xx, dX>|, |<c_xx, dbar X>|, |<c_bb, .>|
    double constraints = 0;     // max |(d^2X, d dbar X)|, |(dbar^2 X, d dbar X)|
};

struct GeometrySample {
    cd xi;
    double q = 0;
    cd J, Jb;
    double det = 0;
    double K = 0;
    double H_norm = 0;          // NaN off the conformal branch
    cd gamma111, gamma222;      // d q / q, dbar q / q
    double el = 0;
    bool conformal = true;
};

MetricSample metric(const PointModel& m);
MetricSample metric_at(const SolutionEvaluator& ev, cd xi);

bool is_conformal(const PointModel& m, const GeometryOptions& o = {});
// K = -q^{-1} d dbar ln q
double gaussian_curvature_conformal(const PointModel& m, const GeometryOptions& o = {});
// K = (1/(2 sqrt g)) dbar[(q/sqrt g) d ln(-q^2/J)], g = J Jbar - q^2
double gaussian_curvature_general(const PointModel& m, const GeometryOptions& o = {});
// Brioschi formula on E = 2q-J-Jbar, F = i(Jbar-J), G = 2q+J+Jbar (oracle).
double gaussian_curvature_brioschi(const PointModel& m, const GeometryOptions& o = {});
double gaussian_curvature(const PointModel& m, const GeometryOptions& o = {});
double gaussian_curvature_at(const SolutionEvaluator& ev, cd xi, const GeometryOptions& o = {});
// -q^{-1} (1/4) Laplacian ln q by the 5-point stencil, h = 1e-4 (1 + |xi|).
double gaussian_curvature_fd(const SolutionEvaluator& ev, cd xi);

XDerivatives x_derivatives(const PointModel& m);
Mat mean_curvature(const PointModel& m, const GeometryOptions& o = {});
Mat mean_curvature_at(const SolutionEvaluator& ev, cd xi, const GeometryOptions& o = {});
SecondFundamentalForm second_fundamental_form(const PointModel& m, const GeometryOptions& o = {});

GeometrySample geometry_sample(const SolutionEvaluator& ev, cd xi, const GeometryOptions& o = {});
std::vector<GeometrySample> geometry_grid(const SolutionEvaluator& ev, const std::vector<cd>& pts,
                                          const GeometryOptions& o = {});

// Willmore: integrand -4i (1/q) [dP, dbar P]^2, scalarized with -1/2 tr.
Mat willmore_integrand_matrix(const FirstOrderModel& m);
cd willmore_density(const FirstOrderModel& m);

struct IntegralReport {
    cd value;                   // final level
    std::vector<cd> levels;     // one per refinement
    double rel_change = 0;      // |last - previous| / |last|
};

// Square region; `resolution` panels per side at the first level, doubled
// `levels - 1` times. The measure dxi dxibar = c dxi1 dxi2.
IntegralReport willmore(const SolutionEvaluator& ev, const GridSpec& region, int resolution, int levels = 3,
                        double c = 2.0);
// Q = -(c/8pi) int q dxi1 dxi2 over the sphere (unit disk + inverted chart).
IntegralReport topological_charge(const SolutionEvaluator& ev, int resolution, int levels = 3, double c = 2.0);

}  // namespace sigsurf
