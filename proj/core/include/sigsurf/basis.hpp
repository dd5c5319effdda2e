#pragma once

#include <array>

#include "sigsurf/model.hpp"

namespace sigsurf {

// Pauli matrices sigma_1..sigma_3 (index 0..2).
const std::array<Mat, 3>& pauli();
// Gell-Mann basis s_1..s_8 (index 0..7) in the anti-Hermitian normalization
// tr(s_i s_j) = -2 delta_ij.
const std::array<Mat, 8>& gellmann();
// single-entry ladder matrices: y_- has 1 at (3,2), y_+ at (2,3)
Mat y_minus();
Mat y_plus();

enum class Basis { Pauli, GellMann };
const char* basis_name(Basis b);
Basis default_basis(int N);  // throws for N outside {2, 3}

// Real coordinates of the traceless part of an anti-Hermitian X.
//   Pauli:    X_k = tr(X sigma_k)/(2i),       X = i sum X_k sigma_k
//   GellMann: X_k = c_k <X, s_k>,             X = sum c_k X_k s_k
// with c_k = -1 for k in {1,3,4,7,8} and +1 otherwise, which reproduces the
// closed-form coordinates of holomorphic solutions.
std::vector<double> real_coordinates(const Mat& X, Basis b);
Mat from_coordinates(const std::vector<double>& c, Basis b);
int gellmann_sign(int k);  // k = 1..8

}  // namespace sigsurf
