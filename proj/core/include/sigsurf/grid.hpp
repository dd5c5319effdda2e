#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace sigsurf {

using cd = std::complex<double>;

// Square lattice of resolution x resolution points centred on `center`.
struct GridSpec {
    cd center{0.0, 0.0};
    double half_width = 1.0;
    int resolution = 41;

    double spacing() const { return resolution > 1 ? 2.0 * half_width / (resolution - 1) : 0.0; }
};

// Row-major (imaginary part outer). Points closer than one cell to any
// entry of `exclude` are dropped.
std::vector<cd> grid_points(const GridSpec& g, const std::vector<cd>& exclude = {});

// n points uniform in the disk |z - center| < radius; deterministic in seed.
std::vector<cd> random_points(std::size_t n, cd center, double radius, std::uint64_t seed);

// n points equally spaced on |z - center| = radius starting at angle phase.
std::vector<cd> ring_points(std::size_t n, cd center, double radius, double phase = 0.0);

}  // namespace sigsurf
