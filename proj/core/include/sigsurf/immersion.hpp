#pragma once

#include "sigsurf/basis.hpp"
#include "sigsurf/model.hpp"

namespace sigsurf {

struct ImmersionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ImmersionField {
    Mat X;                       // anti-Hermitian
    cd base{0.0, 0.0};
    cd point{0.0, 0.0};
    std::vector<double> coords;  // empty when N has no declared basis
    double error_estimate = 0;   // quadrature only
    int panels = 0;
};

struct PathSpec {
    std::vector<cd> waypoints;   // first = base point, last = end point
    double tol = 1e-10;
    int max_depth = 12;
    std::vector<cd> singularities;
    double singularity_radius = 1e-8;

    static PathSpec straight(cd from, cd to) {
        PathSpec p;
        p.waypoints = {from, to};
        return p;
    }
};

// X = -iP (holomorphic) or +iP (anti-holomorphic). Coordinates are taken
// relative to the constant matrix -+iP0, P0 = diag(0, 1, ..., 1), which is the
// integration-constant convention of the closed-form coordinates.
ImmersionField immerse_holomorphic(const SolutionEvaluator& ev, cd xi, double tol = 1e-10);

// X(xi) - X(xi0) = i int (K^dagger dxi + K dxibar) along the polyline.
ImmersionField immerse_by_path(const SolutionEvaluator& ev, const PathSpec& path);

// Proposition-1 data: integrals of the L1 and M1 Weierstrass forms, valid
// when the differential constraints hold. With the projector orientation used
// here L1 = (I-P) dbar P and M1 = -dbar P (I-P).
struct DCImmersion {
    Mat XL, XM;
    double max_dc = 0;  // largest constraint residual seen at quadrature nodes
};
DCImmersion immerse_dc_simplified(const SolutionEvaluator& ev, const PathSpec& path, double dc_tol = 1e-9);

// Generic path integral of i(A^dagger dxi + A dxibar) for A produced per point.
using FormFn = std::function<void(const FirstOrderModel&, Mat& A, Mat& Adag)>;
ImmersionField integrate_form(const SolutionEvaluator& ev, const PathSpec& path, const FormFn& form);

// Algebraic relations satisfied by closed-form coordinates.
double sphere_relation_cp1(const std::vector<double>& c);        // X1^2+X2^2+(X3+1/2)^2-1/4
double affine_sphere_relation_cp2(const std::vector<double>& c); // 4(X1^2+X2^2+X3^2)+(2/sqrt3)X4+X5^2+..+X8^2
double soliton_relation(const std::vector<double>& c);           // X1^2+X6^2+X7^2-1
// |X1^2+X2^2-1/27|, |X5^2+X7^2-1/27|, |X6^2+X8^2-1/27|, max of the three
double nonsplitting_relation(const std::vector<double>& c);

}  // namespace sigsurf
