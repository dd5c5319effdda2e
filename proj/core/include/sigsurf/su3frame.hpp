#pragma once

#include <array>

#include "sigsurf/model.hpp"

namespace sigsurf {

struct FrameError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// eta_1 = dX, eta_2 = dbar X of a holomorphic CP^2 solution, u = ln(rho / A^2).
struct FrameTangents {
    Mat eta1, eta2;
    double u = 0;
    double rho = 0;   // |dw1|^2 + |dw2|^2 + |w2 dw1 - w1 dw2|^2
    double A = 0;     // 1 + |w1|^2 + |w2|^2
    cd delta, beta, gamma, W;
};

struct FrameParams {
    cd a1, b1, a2, b2;
    double alpha = 0;       // in (0, pi/2)
    double phi = 0;         // U(1) gauge
    double u = 0;
    double sin_alpha = 0, cos_alpha = 0;
};

struct MovingFrame {
    std::array<Mat, 8> eta;   // eta[0], eta[1] tangent; eta[2..7] = eta_3..eta_8
    FrameParams params;
    Mat phi;                  // SU(3) element M1 M2 M3
};

// Inputs w, dw at a point; rejects non-holomorphic fields and rho = 0.
FrameTangents frame_tangents(const SolutionEvaluator& ev, cd xi);
FrameParams frame_params(const SolutionEvaluator& ev, cd xi, double phi = 0.0);
Mat su3_element(const FrameParams& p);
// eta_j = phi^dagger s_j phi, j = 3..8
std::array<Mat, 6> frame_normals(const FrameParams& p);
MovingFrame moving_frame(const SolutionEvaluator& ev, cd xi, double phi = 0.0);

// Closed-form normals of (xi, xi^2/2) (i prefactors of eta_5..eta_8 corrected
// so all six are anti-Hermitian). Principal branch for xi^(1/2), xi^(3/2).
std::array<Mat, 6> appendix_normals(cd xi, double phi = 0.0);

struct AppendixComparison {
    double eta34 = 0;       // max entry difference, eta_3 and eta_4
    double subspace = 0;    // eta_5..eta_8 vs span of the frame normals
    double entrywise58 = 0; // informational: entrywise eta_5..eta_8 difference
};
AppendixComparison compare_appendix(const MovingFrame& f, cd xi);

struct FrameChecks {
    double orthonormality = 0;  // max |(eta_j, eta_k) - delta_jk|, j,k = 3..8
    double tangency = 0;        // max |(dX, eta_j)|, |(dbar X, eta_j)|
    double conformality = 0;    // |(dX,dX)|, |(dbar X, dbar X)|, |(dX, dbar X) - e^u/2|
    double eta2_vs_K = 0;       // |eta_2 - iK|
    double eta1_vs_Kd = 0;      // |eta_1 - iK^dagger|
    double half_eu_vs_q = 0;    // |e^u/2 - q|
    double unitarity = 0;       // |phi^dagger phi - I|, |det phi - 1|
    double max() const;
};
FrameChecks frame_checks(const SolutionEvaluator& ev, cd xi, const MovingFrame& f);

struct GaussWeingarten {
    std::array<cd, 6> Jn{}, Hn{};           // normal parts of d^2 X and d dbar X
    Eigen::Matrix<cd, 6, 6> S;              // S_jk = (d eta_j, eta_k)
    double res_dd = 0;      // |d^2 X - (dq/q) dX - J_j eta_j|
    double res_ddb = 0;     // |d dbar X - H_j eta_j|
    double res_deta = 0;    // |d eta_j - S_jk eta_k + (H_j dX + J_j dbar X)/q|
    double antisymmetry = 0;
    double compatibility = 0;  // |d dbar X - dbar d X|
    double max() const;
};
// Frame derivatives by central differences with step h (Wirtinger d = (d_1 - i d_2)/2).
GaussWeingarten gauss_weingarten(const SolutionEvaluator& ev, cd xi, double phi = 0.0, double h = 1e-5);

}  // namespace sigsurf
