#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "sigsurf/parallel.hpp"

namespace sigsurf {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 15-point Kronrod rule with its embedded 7-point Gauss rule on [-1, 1].
struct GK15Rule {
    std::array<double, 15> x{}, wk{}, wg{};
};
const GK15Rule& gk15();

template <class V>
struct QuadResult {
    V value;
    double error = 0;  // sum of accepted |K15 - G7| panel estimates
    int panels = 0;
};

// One panel: returns K15 value and writes the |K15 - G7| estimate.
template <class V, class F, class Norm>
V gk15_panel(F&& f, double a, double b, const V& zero, Norm&& norm, double& err) {
    const GK15Rule& r = gk15();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    V k = zero, g = zero;
    for (int i = 0; i < 15; ++i) {
        const V y = f(c + h * r.x[i]);
        k = k + y * (r.wk[i] * h);
        if (r.wg[i] != 0.0) g = g + y * (r.wg[i] * h);
    }
    err = norm(k - g);
    return k;
}

// Recursive bisection until each panel's estimate is below its share of tol.
template <class V, class F, class Norm>
QuadResult<V> integrate_adaptive(F&& f, double a, double b, const V& zero, Norm&& norm, double tol = 1e-10,
                                 int max_depth = 12) {
    QuadResult<V> res{zero, 0.0, 0};
    if (a == b) return res;
    const double total = std::abs(b - a);
    std::function<void(double, double, int)> rec = [&](double lo, double hi, int depth) {
        double err;
        V v = gk15_panel<V>(f, lo, hi, zero, norm, err);
        const double local = tol * std::abs(hi - lo) / total;
        if (err <= local || err <= 1e-15 * norm(v)) {
            res.value = res.value + v;
            res.error += err;
            ++res.panels;
            return;
        }
        if (depth >= max_depth) throw QuadratureError("adaptive quadrature did not converge at maximum depth");
        const double mid = 0.5 * (lo + hi);
        rec(lo, mid, depth + 1);
        rec(mid, hi, depth + 1);
    };
    rec(a, b, 0);
    return res;
}

// Composite tensor-product GK15 on nx x ny panels. f(x, y) -> V. Rows are
// evaluated in parallel and summed pairwise in fixed order.
template <class V, class F>
V integrate_tensor(F&& f, double ax, double bx, int nx, double ay, double by, int ny, const V& zero) {
    const GK15Rule& r = gk15();
    const double hx = (bx - ax) / nx, hy = (by - ay) / ny;
    const std::size_t rows = std::size_t(ny) * 15;
    std::vector<V> row(rows, zero);
    parallel_for(rows, [&](std::size_t k) {
        const int py = int(k / 15), iy = int(k % 15);
        const double y = ay + hy * (py + 0.5 + 0.5 * r.x[iy]);
        const double wy = 0.5 * hy * r.wk[iy];
        std::vector<V> cells(std::size_t(nx), zero);
        for (int px = 0; px < nx; ++px) {
            V s = zero;
            for (int ix = 0; ix < 15; ++ix) {
                const double x = ax + hx * (px + 0.5 + 0.5 * r.x[ix]);
                s = s + f(x, y) * (0.5 * hx * r.wk[ix]);
            }
            cells[px] = s;
        }
        row[k] = pairwise_sum(cells, zero) * wy;
    });
    return pairwise_sum(row, zero);
}

}  // namespace sigsurf
