#pragma once

#include <string>
#include <vector>

#include "sigsurf/model.hpp"

namespace sigsurf {

struct SymmetryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class GeneratorKind { X1, X2, S, T, Y, Z, Custom };

// One generator of the point-symmetry algebra. Indices are 1-based.
// X1 = eta(xi) d_xi and X2 = eta(xibar) d_xibar carry the function eta;
// Custom carries explicit components phi_i (d/dw_i) and psi_i (d/dwbar_i),
// written in the variables w1.., wb1.. (used for negative controls).
struct GeneratorDescriptor {
    GeneratorKind kind = GeneratorKind::S;
    int i = 0, j = 0;
    expr::Expr eta;
    std::vector<expr::Expr> phi, psi;
    std::string label() const;
};

std::vector<GeneratorDescriptor> generator_list(int N, const expr::Expr& eta1 = nullptr,
                                                const expr::Expr& eta2 = nullptr);
// S, T, Y, Z: (N-1) + (N-1)(N-2) + 2(N-1) = N^2 - 1 = dim su(N).
std::size_t finite_generator_count(int N);

// Components (phi_i, psi_i) of the vector field at the solution's expressions.
struct FlowComponents {
    std::vector<expr::Expr> phi, psi;
};
FlowComponents flow_components(const GeneratorDescriptor& g, const AffineSolution& s);

// First-order flow w -> w + eps phi, wbar -> wbar + eps psi. The result is formal
// (w and wbar are perturbed independently).
AffineSolution apply_generator(const GeneratorDescriptor& g, const AffineSolution& s, double eps);

struct SlopeReport {
    std::vector<double> eps, residual;
    double slope = 0;
    bool exact = false;  // residual at round-off for every eps: slope meaningless
};
SlopeReport infinitesimal_symmetry_order(const GeneratorDescriptor& g, const AffineSolution& s,
                                         const std::vector<cd>& grid,
                                         const std::vector<double>& eps = {1e-2, 1e-3, 1e-4},
                                         double base_tol = 1e-10);

// f -> u f, renormalized to f_1 = 1.
AffineSolution apply_projective(const Mat& u, const AffineSolution& s);
// (u1, u2) -> (w1, w2) by the spin-1 fractional-linear map with |a|^2 + |b|^2 = 1.
AffineSolution apply_generalized_su2(cd a, cd b, const AffineSolution& s);

// max |(u f)_1| reciprocal check on a grid; throws SymmetryError if the chart breaks.
void check_chart(const AffineSolution& s, const std::vector<cd>& grid, double tol = 1e-12);

// Helpers for the invariance properties.
Mat random_unitary(int N, unsigned long long seed);
AffineSolution drop_last_field(const AffineSolution& s);              // w_{N-1} = 0
AffineSolution diagonal_embedding(const AffineSolution& cp1, int N);  // w_i = w / sqrt(N-1)

}  // namespace sigsurf
