#include "sigsurf/basis.hpp"

#include <cmath>

namespace sigsurf {

namespace {
const cd I(0.0, 1.0);

Mat m3(std::initializer_list<cd> v) {
    Mat m(3, 3);
    auto it = v.begin();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = *it++;
    return m;
}
}  // namespace

const std::array<Mat, 3>& pauli() {
    static const std::array<Mat, 3> s = [] {
        std::array<Mat, 3> p;
        for (auto& m : p) m = Mat::Zero(2, 2);
        p[0](0, 1) = p[0](1, 0) = 1.0;
        p[1](0, 1) = -I;
        p[1](1, 0) = I;
        p[2](0, 0) = 1.0;
        p[2](1, 1) = -1.0;
        return p;
    }();
    return s;
}

const std::array<Mat, 8>& gellmann() {
    static const std::array<Mat, 8> s = [] {
        const double r3 = std::sqrt(3.0);
        return std::array<Mat, 8>{
            m3({0, 0, 0, 0, 0, -I, 0, -I, 0}),
            m3({0, 0, 0, 0, 0, -1, 0, 1, 0}),
            m3({0, 0, 0, 0, -I, 0, 0, 0, I}),
            m3({-2.0 * I / r3, 0, 0, 0, I / r3, 0, 0, 0, I / r3}),
            m3({0, -1, 0, 1, 0, 0, 0, 0, 0}),
            m3({0, 0, -1, 0, 0, 0, 1, 0, 0}),
            m3({0, I, 0, I, 0, 0, 0, 0, 0}),
            m3({0, 0, I, 0, 0, 0, I, 0, 0}),
        };
    }();
    return s;
}

Mat y_minus() {
    Mat m = Mat::Zero(3, 3);
    m(2, 1) = 1.0;
    return m;
}

Mat y_plus() {
    Mat m = Mat::Zero(3, 3);
    m(1, 2) = 1.0;
    return m;
}

const char* basis_name(Basis b) { return b == Basis::Pauli ? "pauli" : "gellmann"; }

Basis default_basis(int N) {
    if (N == 2) return Basis::Pauli;
    if (N == 3) return Basis::GellMann;
    throw std::invalid_argument("real coordinates are defined for N = 2 (Pauli) and N = 3 (Gell-Mann) only");
}

int gellmann_sign(int k) { return (k == 2 || k == 5 || k == 6) ? 1 : -1; }

std::vector<double> real_coordinates(const Mat& X, Basis b) {
    std::vector<double> c;
    if (b == Basis::Pauli) {
        if (X.rows() != 2) throw std::invalid_argument("Pauli coordinates need a 2x2 matrix");
        for (const auto& s : pauli()) c.push_back(((X * s).trace() / (2.0 * I)).real());
    } else {
        if (X.rows() != 3) throw std::invalid_argument("Gell-Mann coordinates need a 3x3 matrix");
        for (int k = 0; k < 8; ++k) c.push_back(gellmann_sign(k + 1) * inner(X, gellmann()[k]).real());
    }
    return c;
}

Mat from_coordinates(const std::vector<double>& c, Basis b) {
    if (b == Basis::Pauli) {
        Mat X = Mat::Zero(2, 2);
        for (int k = 0; k < 3; ++k) X += I * c.at(k) * pauli()[k];
        return X;
    }
    Mat X = Mat::Zero(3, 3);
    for (int k = 0; k < 8; ++k) X += double(gellmann_sign(k + 1)) * c.at(k) * gellmann()[k];
    return X;
}

}  // namespace sigsurf
