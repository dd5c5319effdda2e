#include "sigsurf/grid.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace sigsurf {

std::vector<cd> grid_points(const GridSpec& g, const std::vector<cd>& exclude) {
    std::vector<cd> pts;
    const double h = g.spacing();
    const int n = g.resolution;
    pts.reserve(std::size_t(n) * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const cd z = n > 1 ? g.center + cd(-g.half_width + i * h, -g.half_width + j * h) : g.center;
            bool keep = true;
            for (cd s : exclude)
                if (std::abs(z - s) < std::max(h, 1e-12)) keep = false;
            if (keep) pts.push_back(z);
        }
    return pts;
}

std::vector<cd> random_points(std::size_t n, cd center, double radius, std::uint64_t seed) {
    // explicit transforms of raw engine output keep the sequence identical
    // across standard libraries
    std::mt19937_64 rng(seed);
    auto unit = [&] { return double(rng() >> 11) * 0x1.0p-53; };
    std::vector<cd> pts;
    pts.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double r = radius * std::sqrt(unit());
        const double t = 2.0 * std::numbers::pi * unit();
        pts.push_back(center + std::polar(r, t));
    }
    return pts;
}

std::vector<cd> ring_points(std::size_t n, cd center, double radius, double phase) {
    std::vector<cd> pts;
    for (std::size_t k = 0; k < n; ++k) pts.push_back(center + std::polar(radius, phase + 2.0 * std::numbers::pi * k / n));
    return pts;
}

}  // namespace sigsurf
