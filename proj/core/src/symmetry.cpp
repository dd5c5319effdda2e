#include "sigsurf/symmetry.hpp"

#include <cmath>
#include <random>

#include "sigsurf/parallel.hpp"

namespace sigsurf {

namespace {

using expr::Expr;

Expr c(cd v) { return expr::constant(v); }

std::string idx(int i) { return std::to_string(i); }

}  // namespace

std::string GeneratorDescriptor::label() const {
    switch (kind) {
        case GeneratorKind::X1: return "X1";
        case GeneratorKind::X2: return "X2";
        case GeneratorKind::S: return "S" + idx(i);
        case GeneratorKind::T: return "T" + idx(i) + idx(j);
        case GeneratorKind::Y: return "Y" + idx(i);
        case GeneratorKind::Z: return "Z" + idx(i);
        case GeneratorKind::Custom: return "custom";
    }
    return "?";
}

std::vector<GeneratorDescriptor> generator_list(int N, const Expr& eta1, const Expr& eta2) {
    if (N < 2) throw SymmetryError("N must be at least 2");
    std::vector<GeneratorDescriptor> g;
    GeneratorDescriptor x1;
    x1.kind = GeneratorKind::X1;
    x1.eta = eta1 ? eta1 : expr::pow(expr::xi(), c(2.0));
    GeneratorDescriptor x2;
    x2.kind = GeneratorKind::X2;
    x2.eta = eta2 ? eta2 : expr::pow(expr::xibar(), c(2.0));
    g.push_back(x1);
    g.push_back(x2);
    const int n = N - 1;
    for (int i = 1; i <= n; ++i) g.push_back({GeneratorKind::S, i, 0, nullptr, {}, {}});
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) g.push_back({GeneratorKind::T, i, j, nullptr, {}, {}});
    for (int i = 1; i <= n; ++i) g.push_back({GeneratorKind::Y, i, 0, nullptr, {}, {}});
    for (int i = 1; i <= n; ++i) g.push_back({GeneratorKind::Z, i, 0, nullptr, {}, {}});
    return g;
}

std::size_t finite_generator_count(int N) { return generator_list(N).size() - 2; }

FlowComponents flow_components(const GeneratorDescriptor& g, const AffineSolution& s) {
    const int n = s.N - 1;
    const auto& w = s.w;
    const auto& wb = s.wb;
    FlowComponents f;
    f.phi.assign(n, c(0.0));
    f.psi.assign(n, c(0.0));
    auto check = [&](int i) {
        if (i < 1 || i > n) throw SymmetryError("generator index out of range for N = " + idx(s.N));
    };
    switch (g.kind) {
        case GeneratorKind::X1:
        case GeneratorKind::X2: {
            if (!g.eta) throw SymmetryError("X1/X2 need a function eta");
            const bool hol = g.kind == GeneratorKind::X1;
            if (expr::depends_on(g.eta, hol ? expr::Var::XiBar : expr::Var::Xi))
                throw SymmetryError(hol ? "X1 needs eta(xi)" : "X2 needs eta(xibar)");
            const expr::Var v = hol ? expr::Var::Xi : expr::Var::XiBar;
            for (int k = 0; k < n; ++k) {
                f.phi[k] = g.eta * expr::differentiate(w[k], v);
                f.psi[k] = g.eta * expr::differentiate(wb[k], v);
            }
            break;
        }
        case GeneratorKind::S:
            check(g.i);
            f.phi[g.i - 1] = w[g.i - 1];
            f.psi[g.i - 1] = -wb[g.i - 1];
            break;
        case GeneratorKind::T:
            check(g.i);
            check(g.j);
            if (g.i == g.j) throw SymmetryError("T_ij needs i != j");
            // w_i d/dw_j - wbar_j d/dwbar_i
            f.phi[g.j - 1] = w[g.i - 1];
            f.psi[g.i - 1] = -wb[g.j - 1];
            break;
        case GeneratorKind::Y:
            check(g.i);
            for (int k = 0; k < n; ++k) f.phi[k] = w[g.i - 1] * w[k];
            f.psi[g.i - 1] = c(1.0);
            break;
        case GeneratorKind::Z:
            check(g.i);
            for (int k = 0; k < n; ++k) f.psi[k] = wb[g.i - 1] * wb[k];
            f.phi[g.i - 1] = c(1.0);
            break;
        case GeneratorKind::Custom: {
            std::map<std::string, Expr> sub;
            for (int k = 0; k < n; ++k) {
                sub["w" + idx(k + 1)] = w[k];
                sub["wb" + idx(k + 1)] = wb[k];
            }
            if (int(g.phi.size()) != n || int(g.psi.size()) != n)
                throw SymmetryError("custom generator needs N-1 components each");
            for (int k = 0; k < n; ++k) {
                f.phi[k] = expr::substitute_params(g.phi[k], sub);
                f.psi[k] = expr::substitute_params(g.psi[k], sub);
            }
            break;
        }
    }
    return f;
}

AffineSolution apply_generator(const GeneratorDescriptor& g, const AffineSolution& s, double eps) {
    const FlowComponents f = flow_components(g, s);
    AffineSolution r = s;
    const Expr e = c(eps);
    for (int k = 0; k < s.N - 1; ++k) {
        r.w[k] = s.w[k] + e * f.phi[k];
        r.wb[k] = s.wb[k] + e * f.psi[k];
    }
    r.formal = true;
    r.name = s.name + "+" + g.label();
    return r;
}

namespace {
double grid_residual(const AffineSolution& s, const std::vector<cd>& grid) {
    const SolutionEvaluator ev(s, 2);
    std::vector<double> r(grid.size());
    parallel_for(grid.size(), [&](std::size_t k) { r[k] = el_residual(model_at(ev, grid[k], 2)).max(); });
    double m = 0;
    for (double v : r) m = std::max(m, v);
    return m;
}
}  // namespace

SlopeReport infinitesimal_symmetry_order(const GeneratorDescriptor& g, const AffineSolution& s,
                                         const std::vector<cd>& grid, const std::vector<double>& eps,
                                         double base_tol) {
    if (eps.size() < 2) throw SymmetryError("slope needs at least two eps values");
    const double base = grid_residual(s, grid);
    if (base > base_tol) throw SymmetryError("base solution is not a solution (residual " + std::to_string(base) + ")");
    SlopeReport r;
    r.eps = eps;
    for (double e : eps) r.residual.push_back(grid_residual(apply_generator(g, s, e), grid));
    r.exact = true;
    for (double v : r.residual) r.exact = r.exact && v < 1e-12;
    // least-squares slope of log r against log eps
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k) {
        const double x = std::log(eps[k]), y = std::log(std::max(r.residual[k], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    r.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return r;
}

AffineSolution apply_projective(const Mat& u, const AffineSolution& s) {
    const int N = s.N;
    if (u.rows() != N || u.cols() != N) throw SymmetryError("unitary has the wrong size");
    if ((u.adjoint() * u - Mat::Identity(N, N)).cwiseAbs().maxCoeff() > 1e-12)
        throw SymmetryError("matrix is not unitary");
    auto row = [&](int i, const std::vector<Expr>& f, bool bar) {
        Expr acc = c(bar ? std::conj(u(i, 0)) : u(i, 0));
        for (int j = 1; j < N; ++j) acc = acc + c(bar ? std::conj(u(i, j)) : u(i, j)) * f[j - 1];
        return acc;
    };
    AffineSolution r = s;
    const Expr d = row(0, s.w, false), db = row(0, s.wb, true);
    for (int i = 1; i < N; ++i) {
        r.w[i - 1] = row(i, s.w, false) / d;
        r.wb[i - 1] = row(i, s.wb, true) / db;
    }
    r.name = s.name + "+U(N)";
    return r;
}

AffineSolution apply_generalized_su2(cd a, cd b, const AffineSolution& s) {
    if (s.N != 3) throw SymmetryError("generalized SU(2) action is defined for CP^2");
    if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-12) throw SymmetryError("|a|^2 + |b|^2 must be 1");
    const Expr r2 = c(std::sqrt(2.0));
    auto map = [&](const Expr& u1, const Expr& u2, cd A, cd B, cd Ab, cd Bb) {
        const Expr D = r2 * (c(A * Bb) * u1 + c(Ab * B) * u2) + c(A * Ab - B * Bb);
        return std::pair{(c(A * A) * u1 - c(B * B) * u2 - c(std::sqrt(2.0) * A * B)) / D,
                         (c(-Bb * Bb) * u1 + c(Ab * Ab) * u2 - c(std::sqrt(2.0) * Ab * Bb)) / D};
    };
    AffineSolution r = s;
    const cd ab = std::conj(a), bb = std::conj(b);
    std::tie(r.w[0], r.w[1]) = map(s.w[0], s.w[1], a, b, ab, bb);
    std::tie(r.wb[0], r.wb[1]) = map(s.wb[0], s.wb[1], ab, bb, a, b);
    r.name = s.name + "+SU(2)";
    return r;
}

void check_chart(const AffineSolution& s, const std::vector<cd>& grid, double tol) {
    for (cd z : grid) {
        const expr::EvalPoint p{z, &s.params};
        for (const auto& e : s.w) {
            cd v;
            try {
                v = expr::evaluate(e, p);
            } catch (const expr::EvalError&) {
                throw SymmetryError("chart breaks down: field not finite on the grid");
            }
            if (!std::isfinite(std::abs(v)) || std::abs(v) > 1.0 / tol)
                throw SymmetryError("chart breaks down: (u f)_1 vanishes on the grid");
        }
    }
}

Mat random_unitary(int N, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Mat a(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) a(i, j) = cd(g(rng), g(rng));
    Eigen::HouseholderQR<Mat> qr(a);
    return qr.householderQ() * Mat::Identity(N, N);
}

AffineSolution drop_last_field(const AffineSolution& s) {
    if (s.N < 3) throw SymmetryError("cannot reduce below CP^1");
    AffineSolution r = s;
    r.N = s.N - 1;
    r.w.pop_back();
    r.wb.pop_back();
    r.name = s.name + "-reduced";
    return r;
}

AffineSolution diagonal_embedding(const AffineSolution& cp1, int N) {
    if (cp1.N != 2) throw SymmetryError("diagonal embedding needs a CP^1 solution");
    AffineSolution r = cp1;
    r.N = N;
    const Expr k = c(1.0 / std::sqrt(double(N - 1)));
    r.w.assign(N - 1, k * cp1.w[0]);
    r.wb.assign(N - 1, k * cp1.wb[0]);
    r.name = cp1.name + "-diag" + idx(N);
    return r;
}

}  // namespace sigsurf
