// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <sigsurf/geometry.hpp>
#include <sigsurf/immersion.hpp>
#include <sigsurf/solutions.hpp>
#include <sigsurf/su3frame.hpp>
#include <sigsurf/symmetry.hpp>

using namespace sigsurf;
namespace fs = std::filesystem;

namespace tol {
constexpr double c1_K = 1e-8, c1_seconds = 5.0;
constexpr double c2_K = 1e-7;
constexpr double c3_K = 1e-8, c3_det = 1e-12;
constexpr double c4_sphere = 1e-12, c4_soliton = 1e-10, c4_nonsplit = 1e-12;
constexpr double c5_closed = 1e-6, c5_homotopy = 1e-8;
constexpr double c6_frame = 1e-10, c6_appendix = 1e-9, c6_gw = 1e-7;
constexpr double c7_slope = 0.1, c7_negative = 1.2, c7_el = 1e-9, c7_q = 1e-10;
constexpr double c8_oracle = 1e-9;
constexpr double c9_ratio = 1e-4, c9_refine = 1e-5;
constexpr double c10_refine = 1e-6, c10_invariance = 1e-10;
constexpr double c11_rel = 1e-6;
}  // namespace tol

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& what) {
    std::printf("criterion %2d: %s  %s\n", n, ok ? "PASS" : "FAIL", what.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... a) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<cd> grid41(const CatalogEntry& e) {
    return grid_points({e.grid.center, e.grid.half_width, 41}, e.solution.singularities);
}

// n points in the disk, at least `gap` away from every singularity
std::vector<cd> random_clear(std::size_t n, cd c, double r, const std::vector<cd>& sing, double gap, std::uint64_t seed) {
    std::vector<cd> out;
    while (out.size() < n) {
        for (cd p : random_points(n, c, r, seed++)) {
            bool clear = true;
            for (cd s : sing) clear = clear && std::abs(p - s) > gap;
            if (clear && out.size() < n) out.push_back(p);
        }
    }
    return out;
}

double rel(cd a, cd b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

// ------------------------------------------------------------------ 1, 2, 3

void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const SolutionEvaluator ev(AffineSolution::from_strings({"xi", "xi^2/2"}));
    const auto g = geometry_grid(ev, grid_points({0.0, 1.5, 41}));
    double err = 0;
    for (const auto& s : g) err = std::max(err, std::abs(s.K - 2.0));
    const double t = elapsed(t0);
    report(1, g.size() == 1681 && err < tol::c1_K && t < tol::c1_seconds,
           fmt("(xi, xi^2/2) 41x41 on [-1.5,1.5]^2: max|K-2| = %.2e (< %.0e), %.3f s (< %.0f s)", err, tol::c1_K, t,
               tol::c1_seconds));
}

void criterion2() {
    const CatalogEntry& e = catalog_entry("soliton");
    const SolutionEvaluator ev(e.solution);
    const auto pts = grid41(e);
    const auto g = geometry_grid(ev, pts);
    double err = 0;
    for (const auto& s : g) err = std::max(err, std::abs(s.K - 1.0));
    report(2, err < tol::c2_K,
           fmt("soliton 41x41 on |xi1|,|xi2| <= %.1f (sech poles at |xi2| = pi/2 excluded): max|K-1| = %.2e (< %.0e)",
               e.grid.half_width, err, tol::c2_K));
}

void criterion3() {
    double kmax = 0;
    for (const char* n : {"nonsplit-N3", "nonsplit-N4", "nonsplit-N5"}) {
        const CatalogEntry& e = catalog_entry(n);
        const SolutionEvaluator ev(e.solution);
        for (const auto& s : geometry_grid(ev, grid41(e))) kmax = std::max(kmax, std::abs(s.K));
    }
    const CatalogEntry& e2 = catalog_entry("nonsplit-N2");
    const SolutionEvaluator ev2(e2.solution);
    double det = 0;
    for (cd p : grid41(e2)) det = std::max(det, std::abs(metric_at(ev2, p).det));
    report(3, kmax < tol::c3_K && det < tol::c3_det,
           fmt("non-splitting N=3,4,5: max|K| = %.2e (< %.0e); N=2: max|det g| = %.2e (< %.0e)", kmax, tol::c3_K, det,
               tol::c3_det));
}

// ------------------------------------------------------------------ 4

std::vector<double> path_coords(const CatalogEntry& e, const SolutionEvaluator& ev, cd base, cd p, double qtol) {
    PathSpec path = PathSpec::straight(base, p);
    path.tol = qtol;
    path.singularities = e.solution.singularities;
    auto c = immerse_by_path(ev, path).coords;
    for (const auto& [k, x] : e.oracle.coords) c[k - 1] += expr::evaluate(x, {base, &e.solution.params}).real();
    return c;
}

void criterion4() {
    double sphere = 0, affine = 0, sol = 0, ns = 0, ns_closed = 0;
    for (const char* n : {"cp1-xi", "cp1-xi2"}) {
        const CatalogEntry& e = catalog_entry(n);
        const SolutionEvaluator ev(e.solution);
        for (cd p : e.test_points()) sphere = std::max(sphere, std::abs(sphere_relation_cp1(immerse_holomorphic(ev, p).coords)));
    }
    for (const char* n : {"cp2-special", "cp2-monomial-31", "cp2-rational-exp"}) {
        const CatalogEntry& e = catalog_entry(n);
        const SolutionEvaluator ev(e.solution);
        for (cd p : e.test_points())
            affine = std::max(affine, std::abs(affine_sphere_relation_cp2(immerse_holomorphic(ev, p).coords)));
    }
    {
        const CatalogEntry& e = catalog_entry("soliton");
        const SolutionEvaluator ev(e.solution);
        const auto pts = e.test_points();
        for (cd p : pts) sol = std::max(sol, std::abs(soliton_relation(path_coords(e, ev, pts.front(), p, 1e-12))));
    }
    {
        const CatalogEntry& e = catalog_entry("nonsplit-N3");
        const SolutionEvaluator ev(e.solution);
        const auto pts = e.test_points();
        for (cd p : pts) {
            ns = std::max(ns, nonsplitting_relation(path_coords(e, ev, pts.front(), p, 1e-13)));
            std::vector<double> c(8);
            for (const auto& [k, x] : e.oracle.coords) c[k - 1] = expr::evaluate(x, {p, &e.solution.params}).real();
            ns_closed = std::max(ns_closed, nonsplitting_relation(c));
        }
    }
    report(4, sphere < tol::c4_sphere && affine < tol::c4_sphere && sol < tol::c4_soliton && ns < tol::c4_nonsplit &&
                  ns_closed < tol::c4_nonsplit,
           fmt("sphere (w=xi, xi^2) %.1e, affine sphere (3 CP2 entries) %.1e (< %.0e); soliton %.1e (< %.0e); "
               "1/27 relations: integrated %.1e, closed form %.1e (< %.0e)",
               sphere, affine, tol::c4_sphere, sol, tol::c4_soliton, ns, ns_closed, tol::c4_nonsplit));
}

// ------------------------------------------------------------------ 5

void criterion5() {
    double closed = 0;
    for (const char* n : {"cp1-xi", "cp1-xi2", "cp2-special", "cp2-monomial-31", "cp2-rational-exp"}) {
        const CatalogEntry& e = catalog_entry(n);
        const SolutionEvaluator ev(e.solution);
        const cd base = e.grid.center + e.grid.half_width * cd(0.137, 0.071);
        const Mat X0 = immerse_holomorphic(ev, base).X;
        for (cd p : e.test_points()) {
            PathSpec path = PathSpec::straight(base, p);
            path.singularities = e.solution.singularities;
            const Mat d = immerse_holomorphic(ev, p).X - X0;
            closed = std::max(closed, (immerse_by_path(ev, path).X - d).cwiseAbs().maxCoeff());
        }
    }
    const CatalogEntry& s = catalog_entry("soliton");
    const SolutionEvaluator ev(s.solution);
    double homotopy = 0;
    const cd base = s.grid.center;
    for (cd p : s.test_points()) {
        if (std::abs(p - base) < 1e-12) continue;
        const cd mid = 0.5 * (base + p), n = cd(0, 1) * (p - base) * 0.4;
        PathSpec up, dn;
        up.waypoints = {base, mid + n, p};
        dn.waypoints = {base, mid - n, p};
        homotopy = std::max(homotopy, (immerse_by_path(ev, up).X - immerse_by_path(ev, dn).X).cwiseAbs().maxCoeff());
    }
    report(5, closed < tol::c5_closed && homotopy < tol::c5_homotopy,
           fmt("path vs closed-form -iP differences (5 holomorphic entries) %.1e (< %.0e); soliton homotopic paths %.1e "
               "(< %.0e)",
               closed, tol::c5_closed, homotopy, tol::c5_homotopy));
}

// ------------------------------------------------------------------ 6

void criterion6() {
    const SolutionEvaluator ev(AffineSolution::from_strings({"xi", "xi^2/2"}));
    // frame is undefined where W = -xi^2/2 vanishes
    const auto pts = random_clear(30, 0.0, 1.5, {0.0}, 0.1, 61);
    double on = 0, tang = 0, eta2 = 0, eu = 0, gw = 0;
    for (cd p : pts) {
        const MovingFrame f = moving_frame(ev, p);
        const FrameChecks c = frame_checks(ev, p, f);
        on = std::max(on, c.orthonormality);
        tang = std::max(tang, c.tangency);
        eta2 = std::max(eta2, c.eta2_vs_K);
        eu = std::max(eu, c.half_eu_vs_q);
        gw = std::max(gw, gauss_weingarten(ev, p).max());
    }
    double a34 = 0, sub = 0, entry = 0;
    for (int k = 0; k < 16; ++k) {
        const cd z = std::polar(1.0, -std::numbers::pi + (k + 0.5) * 2 * std::numbers::pi / 16);
        const AppendixComparison a = compare_appendix(moving_frame(ev, z), z);
        a34 = std::max(a34, a.eta34);
        sub = std::max(sub, a.subspace);
        entry = std::max(entry, a.entrywise58);
    }
    const bool ok = on < tol::c6_frame && tang < tol::c6_frame && eta2 < tol::c6_frame && eu < tol::c6_frame &&
                    a34 < tol::c6_appendix && sub < tol::c6_appendix && gw < tol::c6_gw;
    report(6, ok,
           fmt("30 pts: orthonormality %.1e, tangency %.1e, eta2 = iK %.1e, e^u/2 = q %.1e (< %.0e); ring |xi|=1: "
               "eta3,eta4 %.1e, eta5..8 span %.1e (< %.0e) [entrywise eta5..8 %.2f, info]; GW %.1e (< %.0e)",
               on, tang, eta2, eu, tol::c6_frame, a34, sub, tol::c6_appendix, entry, gw, tol::c6_gw));
}

// ------------------------------------------------------------------ 7

void criterion7() {
    double worst = 0, neg = 0;
    int exact = 0, total = 0;
    for (const char* n : {"nonsplit-N2", "soliton", "nonsplit-N4"}) {
        const CatalogEntry& e = catalog_entry(n);
        const auto pts = grid_points({e.grid.center, e.grid.half_width * 0.8, 3}, e.solution.singularities);
        for (const auto& g : generator_list(e.N())) {
            const SlopeReport r = infinitesimal_symmetry_order(g, e.solution, pts);
            ++total;
            if (r.exact)
                ++exact;
            else
                worst = std::max(worst, std::abs(r.slope - 2.0));
        }
        GeneratorDescriptor c;
        c.kind = GeneratorKind::Custom;
        for (int k = 0; k < e.N() - 1; ++k) {
            c.phi.push_back(k == 0 ? expr::parse("w1^2") : expr::constant(0.0));
            c.psi.push_back(expr::constant(0.0));
        }
        neg = std::max(neg, infinitesimal_symmetry_order(c, e.solution, pts).slope);
    }
    double el = 0, dq = 0;
    auto act = [&](const AffineSolution& s, const AffineSolution& t, const std::vector<cd>& pts) {
        const SolutionEvaluator a(s), b(t);
        for (cd p : pts) {
            el = std::max(el, el_residual_at(b, p).max());
            dq = std::max(dq, std::abs(first_order_at(a, p).q - first_order_at(b, p).q));
        }
    };
    unsigned long long seed = 1;
    for (const char* n : {"cp1-xi", "nonsplit-N2", "cp2-special", "soliton", "nonsplit-N4"}) {
        const CatalogEntry& e = catalog_entry(n);
        const auto pts = e.test_points();
        act(e.solution, apply_projective(random_unitary(e.N(), seed++), e.solution), pts);
    }
    for (const char* n : {"cp2-special", "soliton"}) {
        const CatalogEntry& e = catalog_entry(n);
        act(e.solution, apply_generalized_su2(cd(0.6, 0.2), std::sqrt(0.6) * cd(0, 1), e.solution), e.test_points());
    }
    report(7, worst <= tol::c7_slope && neg <= tol::c7_negative && el < tol::c7_el && dq < tol::c7_q,
           fmt("N=2,3,4: %d generators, %d exact, max|slope-2| = %.3f (<= %.1f); negative control slope %.3f (<= %.1f); "
               "U(N)/SU(2) actions: EL %.1e (< %.0e), |dq| %.1e (< %.0e)",
               total, exact, worst, tol::c7_slope, neg, tol::c7_negative, el, tol::c7_el, dq, tol::c7_q));
}

// ------------------------------------------------------------------ 8

void criterion8() {
    double mono_q = 0, mono_K = 0, ns_q = 0, ns_det = 0;
    std::uint64_t seed = 800;
    for (const CatalogEntry& e : {catalog_entry("cp2-special"), catalog_entry("cp2-monomial-31"),
                                  monomial_family(cd(1, 1), 0.5, 3, 2, "m32")}) {
        const SolutionEvaluator ev(e.solution);
        for (cd p : random_clear(100, 0.0, 1.5, {0.0}, 0.05, seed++)) {
            const PointModel m = model_at(ev, p);
            const expr::EvalPoint ep{p, &e.solution.params};
            mono_q = std::max(mono_q, rel(metric(m).g_xb, expr::evaluate(e.oracle.q, ep)));
            mono_K = std::max(mono_K, rel(gaussian_curvature(m), expr::evaluate(e.oracle.K, ep)));
        }
    }
    // printed family, F = xi sampled right of the branch cut
    const std::vector<std::pair<CatalogEntry, cd>> ns{
        {nonsplitting_family(3, expr::parse("xi"), {cd(1, 2)}, 0, 1, "p3"), 1.5},
        {nonsplitting_family(4, expr::parse("exp(xi)"), {1.0, cd(0, 1)}, 0, 1, "p4"), 0.0},
        {nonsplitting_family(5, expr::parse("exp(xi)"), {1.0, cd(0, 1), cd(2, 1)}, 0, 1, "p5"), 0.0},
        {nonsplitting_family(4, expr::parse("xi"), {cd(1, -1), 3.0}, 1, -1, "p4m"), 1.5}};
    for (const auto& [e, c] : ns) {
        const SolutionEvaluator ev(e.solution);
        for (cd p : random_clear(100, c, 0.8, {0.0}, 0.05, seed++)) {
            const MetricSample g = metric_at(ev, p);
            const expr::EvalPoint ep{p, &e.solution.params};
            ns_q = std::max({ns_q, rel(g.g_xb, expr::evaluate(e.oracle.q, ep)), rel(g.g_xx, expr::evaluate(e.oracle.gxx, ep))});
            ns_det = std::max(ns_det, rel(g.det, expr::evaluate(e.oracle.det, ep)));
        }
    }
    report(8, mono_q < tol::c8_oracle && mono_K < tol::c8_oracle && ns_q < tol::c8_oracle && ns_det < tol::c8_oracle,
           fmt("100 random pts each, relative |a-b|/(1+|b|): monomial metric %.1e, curvature %.1e; non-splitting "
               "metric %.1e, det %.1e (< %.0e)",
               mono_q, mono_K, ns_q, ns_det, tol::c8_oracle));
}

// ------------------------------------------------------------------ 9, 10

void criterion9() {
    const SolutionEvaluator a(AffineSolution::from_strings({"xi"})), b(AffineSolution::from_strings({"xi^2"}));
    const IntegralReport qa = topological_charge(a, 4, 3), qb = topological_charge(b, 4, 3);
    double ratio_err = 0;
    for (std::size_t k = 0; k < qa.levels.size(); ++k)
        ratio_err = std::max(ratio_err, std::abs(qb.levels[k] / qa.levels[k] - 2.0));
    report(9, ratio_err < tol::c9_ratio && qa.rel_change < tol::c9_refine && qb.rel_change < tol::c9_refine,
           fmt("Q(xi) = %.12f, Q(xi^2) = %.12f (c = 2): ratio-2 over all levels %.1e (< %.0e); level change %.1e, "
               "%.1e (< %.0e)",
               qa.value.real(), qb.value.real(), ratio_err, tol::c9_ratio, qa.rel_change, qb.rel_change, tol::c9_refine));
}

void criterion10() {
    bool finite = true;
    for (const auto& e : builtin_catalog()) {
        if (e.kind != Classification::Holomorphic) continue;
        const SolutionEvaluator ev(e.solution);
        for (cd p : e.test_points()) {
            const cd w = willmore_density(first_order_at(ev, p));
            finite = finite && std::isfinite(w.real()) && std::isfinite(w.imag());
        }
    }
    const SolutionEvaluator sp(AffineSolution::from_strings({"xi", "xi^2/2"}));
    const IntegralReport W = willmore(sp, {0.0, 1.0, 3}, 4, 3);
    double inv = 0;
    for (const char* n : {"cp1-xi", "cp2-special", "cp2-monomial-31"}) {
        const CatalogEntry& e = catalog_entry(n);
        const SolutionEvaluator a(e.solution), b(apply_projective(random_unitary(e.N(), 5), e.solution));
        for (cd p : e.test_points())
            inv = std::max(inv, rel(willmore_density(first_order_at(b, p)), willmore_density(first_order_at(a, p))));
    }
    report(10, finite && W.rel_change < tol::c10_refine && inv < tol::c10_invariance,
           fmt("integrand finite on holomorphic entries: %s; W(xi, xi^2/2; [-1,1]^2) = %.10fi, level change %.1e (< %.0e); "
               "U(N) invariance %.1e (< %.0e)",
               finite ? "yes" : "no", W.value.imag(), W.rel_change, tol::c10_refine, inv, tol::c10_invariance));
}

// ------------------------------------------------------------------ 11

void criterion11() {
    struct Item {
        expr::Expr e;
        const CatalogEntry* entry;
    };
    std::vector<Item> items;
    for (const auto& e : builtin_catalog()) {
        for (const auto& w : e.solution.w) items.push_back({w, &e});
        for (const auto& w : e.solution.wb) items.push_back({w, &e});
    }
    std::mt19937_64 rng(1111);
    std::uniform_int_distribution<std::size_t> pick(0, items.size() - 1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0;
    const double h = 1e-5;
    for (int k = 0; k < 100; ++k) {
        const Item& it = items[pick(rng)];
        const CatalogEntry& e = *it.entry;
        cd p;
        for (;;) {
            p = e.grid.center + e.grid.half_width * cd(u(rng), u(rng));
            bool clear = true;
            for (cd s : e.solution.singularities) clear = clear && std::abs(p - s) > 2 * e.grid.spacing();
            if (clear) break;
        }
        const bool bar = k % 2;
        const expr::ParamMap* pm = &e.solution.params;
        auto f = [&](cd z) { return expr::evaluate(it.e, {z, pm}); };
        const cd dx = (f(p + h) - f(p - h)) / (2 * h), dy = (f(p + cd(0, h)) - f(p - cd(0, h))) / (2 * h);
        const cd fd = bar ? 0.5 * (dx + cd(0, 1) * dy) : 0.5 * (dx - cd(0, 1) * dy);
        const cd sym = expr::evaluate(expr::differentiate(it.e, bar ? expr::Var::XiBar : expr::Var::Xi), {p, pm});
        worst = std::max(worst, std::abs(sym - fd) / std::max(std::abs(sym), 1.0));
    }
    report(11, worst < tol::c11_rel,
           fmt("100 random (catalog expression, point, d or dbar) pairs: max |sym-fd|/max(|sym|,1) = %.1e (< %.0e)", worst,
               tol::c11_rel));
}

// ------------------------------------------------------------------ 12

int run(const std::string& args) {
    const std::string cmd = std::string(SIGSURF_CLI) + " " + args + " > /dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string strip_stamp(const fs::path& p) {
    std::ifstream f(p);
    std::string line, out;
    while (std::getline(f, line))
        if (line.rfind("# generated ", 0) != 0 && line.find("\"generated\":") == std::string::npos) out += line + "\n";
    return out;
}

void criterion12() {
    const fs::path root = fs::temp_directory_path() / ("sigsurf_accept_" + std::to_string(::getpid()));
    const fs::path src = SIGSURF_SOURCE_DIR;
    struct Job {
        const char* cmd;
        const char* config;
        std::vector<const char*> files;
    };
    const std::vector<Job> jobs{{"check", "soliton_check.ini", {"check.json"}},
                                {"geom", "special_geom.ini", {"geom.csv"}},
                                {"immerse", "cp1_immerse.ini", {"immerse.csv"}},
                                {"frame", "special_frame.ini", {"frame.json"}},
                                {"willmore", "willmore_special.ini", {"willmore.json", "willmore_density.csv"}},
                                {"symmetry", "symmetry_soliton.ini", {"symmetry.json"}},
                                {"symmetry", "su2_soliton.ini", {"symmetry.json"}}};
    int same = 0, compared = 0, bad_exit = 0;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const fs::path a = root / ("a" + std::to_string(j)), b = root / ("b" + std::to_string(j));
        const std::string cfg = (src / "configs" / jobs[j].config).string();
        bad_exit += run(std::string(jobs[j].cmd) + " " + cfg + " -o " + a.string()) != 0;
        bad_exit += run(std::string(jobs[j].cmd) + " " + cfg + " -o " + b.string()) != 0;
        for (const char* f : jobs[j].files) {
            ++compared;
            const std::string x = strip_stamp(a / f), y = strip_stamp(b / f);
            same += !x.empty() && x == y;
        }
    }
    std::error_code ec;
    fs::remove_all(root, ec);
    report(12, bad_exit == 0 && same == compared,
           fmt("%d output files from 7 CLI runs, each run twice: %d byte-identical apart from the timestamp line", compared,
               same));
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    using Fn = void (*)();
    const Fn all[] = {criterion1, criterion2, criterion3, criterion4,  criterion5,  criterion6,
                      criterion7, criterion8, criterion9, criterion10, criterion11, criterion12};
    for (std::size_t k = 0; k < std::size(all); ++k) {
        try {
            all[k]();
        } catch (const std::exception& e) {
            report(int(k + 1), false, std::string("threw: ") + e.what());
        }
    }
    std::printf("acceptance: %d of 12 failed (%.1f s)\n", failures, elapsed(t0));
    return failures;
}
