#pragma once

#include <doctest.h>

#include <cmath>
#include <complex>
#include <sigsurf/model.hpp>

namespace test {

using sigsurf::cd;

inline sigsurf::SolutionEvaluator eval(std::vector<std::string> w, std::vector<std::string> wb = {}) {
    return sigsurf::SolutionEvaluator(sigsurf::AffineSolution::from_strings(w, wb));
}

inline const std::vector<std::string> kSolitonW = {"tanh((xi-xibar)/2)",
                                                    "-(tanh(xi)+tanh(xibar))/(sech(xi)+sech(xibar))"};
inline const std::vector<std::string> kSolitonWb = {"tanh((xibar-xi)/2)",
                                                     "-(tanh(xi)+tanh(xibar))/(sech(xi)+sech(xibar))"};

// Wirtinger derivative of f by central differences
template <class F>
cd fd_d(F&& f, cd z, bool bar, double h = 1e-5) {
    const cd dx = (f(z + h) - f(z - h)) / (2 * h);
    const cd dy = (f(z + cd(0, h)) - f(z - cd(0, h))) / (2 * h);
    return bar ? 0.5 * (dx + cd(0, 1) * dy) : 0.5 * (dx - cd(0, 1) * dy);
}

}  // namespace test
