#include "sigsurf/solutions.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "sigsurf/geometry.hpp"
#include "sigsurf/immersion.hpp"
#include "sigsurf/parallel.hpp"

namespace sigsurf {

namespace {

using expr::Expr;
namespace pt = boost::property_tree;

Expr c(cd v) { return expr::constant(v); }
Expr P(const std::string& s) { return expr::parse(s); }
Expr abs2(const Expr& e) { return e * expr::conjugate(e); }

// ln F, simplified when F = exp(u) so that no branch cut is introduced
Expr log_of(const Expr& F) {
    if (F->op == expr::Op::Func && F->fn == expr::Fn::Exp) return F->a;
    return expr::func(expr::Fn::Ln, F);
}

std::string fmt(cd v) { return expr::to_string(c(v)); }

cd parse_complex(const std::string& s) {
    const Expr e = P(s);
    if (!expr::is_const(e) && !expr::parameters(e).empty()) throw CatalogError("expected a constant: " + s);
    return expr::evaluate(e, {0.0, nullptr});
}

std::string trim_quotes(std::string s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

}  // namespace

const char* classification_name(Classification k) {
    switch (k) {
        case Classification::Holomorphic: return "holomorphic";
        case Classification::AntiHolomorphic: return "anti-holomorphic";
        case Classification::Mixed: return "mixed";
        case Classification::NonSplitting: return "non-splitting";
    }
    return "?";
}

const char* relation_name(Relation r) {
    switch (r) {
        case Relation::None: return "none";
        case Relation::CP1Sphere: return "cp1-sphere";
        case Relation::CP2Affine: return "cp2-affine-sphere";
        case Relation::Soliton: return "soliton";
        case Relation::NonSplitting: return "non-splitting";
    }
    return "?";
}

Classification classification_from_name(const std::string& s) {
    for (auto k : {Classification::Holomorphic, Classification::AntiHolomorphic, Classification::Mixed,
                   Classification::NonSplitting})
        if (s == classification_name(k)) return k;
    throw CatalogError("unknown classification '" + s + "'");
}

Relation relation_from_name(const std::string& s) {
    for (auto r : {Relation::None, Relation::CP1Sphere, Relation::CP2Affine, Relation::Soliton, Relation::NonSplitting})
        if (s == relation_name(r)) return r;
    throw CatalogError("unknown relation '" + s + "'");
}

std::map<int, Expr> holomorphic_coordinates(const AffineSolution& s) {
    std::map<int, Expr> X;
    const Expr two = c(2.0), I = c(cd(0, 1));
    if (s.N == 2) {
        const Expr w = s.w[0], wb = s.wb[0];
        const Expr A = c(1.0) + w * wb;
        X[1] = (w + wb) / (two * A);
        X[2] = I * (w - wb) / (two * A);
        X[3] = -(w * wb) / A;
    } else if (s.N == 3) {
        const Expr w1 = s.w[0], w2 = s.w[1], w1b = s.wb[0], w2b = s.wb[1];
        const Expr A2 = two * (c(1.0) + w1 * w1b + w2 * w2b);
        X[1] = (w1 * w2b + w1b * w2) / A2;
        X[2] = I * (w1 * w2b - w1b * w2) / A2;
        X[3] = (w1 * w1b - w2 * w2b) / A2;
        X[4] = c(-std::sqrt(3.0)) * (w1 * w1b + w2 * w2b) / A2;
        X[5] = -I * (w1 - w1b) / A2;
        X[6] = -I * (w2 - w2b) / A2;
        X[7] = -(w1 + w1b) / A2;
        X[8] = -(w2 + w2b) / A2;
    } else {
        throw CatalogError("closed-form coordinates exist for N = 2, 3 only");
    }
    return X;
}

CatalogEntry monomial_family(cd a1, cd a2, double m, double n, std::string name) {
    CatalogEntry e;
    if (name.empty()) name = "monomial";
    e.solution = AffineSolution::from_strings({"a1*xi^m", "a2*xi^n"}, {},
                                              {{"a1", a1}, {"a2", a2}, {"m", m}, {"n", n}}, name);
    e.solution.singularities = {0.0};
    e.kind = Classification::Holomorphic;
    e.relation = Relation::CP2Affine;
    e.grid = {{0.0, 0.0}, 1.5, 9};
    const std::string r = "(xi*xibar)";
    const std::string M = "(a1*conj(a1)*" + r + "^m*(m^2+a2*conj(a2)*(m-n)^2*" + r + "^n)+a2*conj(a2)*n^2*" + r + "^n)";
    const std::string D = "(1+a1*conj(a1)*" + r + "^m+a2*conj(a2)*" + r + "^n)";
    // printed metric is I = 2 q dxi dxibar
    e.oracle.q = P(M + "/(2*" + r + "*" + D + "^2)");
    e.oracle.gxx = c(0.0);
    e.oracle.K = P("4-2*a1*conj(a1)*a2*conj(a2)*m^2*n^2*(m-n)^2*" + r + "^(m+n)*" + D + "^3/" + M + "^3");
    e.oracle.coords = holomorphic_coordinates(e.solution);
    const bool constant_K = a1 == 0.0 || a2 == 0.0 || m == 0.0 || n == 0.0 || m == n ||
                            (n == 2 * m && std::abs(std::norm(a1) - 2.0 * std::abs(a2)) < 1e-15);
    if (constant_K) {
        const cd k = expr::evaluate(e.oracle.K, {cd(0.7, 0.3), &e.solution.params});
        e.expected_K = k.real();
    }
    return e;
}

CatalogEntry wronskian_mixed(const Expr& g1, const Expr& g2, const Expr& g3, std::string name) {
    const Expr g[3] = {g1, g2, g3};
    for (const auto& x : g)
        if (expr::depends_on(x, expr::Var::XiBar)) throw CatalogError("Wronskian construction needs holomorphic g_i");
    auto G = [&](int i, int j) {
        return g[i] * expr::differentiate(g[j], expr::Var::Xi) - g[j] * expr::differentiate(g[i], expr::Var::Xi);
    };
    Expr f[3];
    for (int i = 0; i < 3; ++i) {
        f[i] = c(0.0);
        for (int k = 0; k < 3; ++k)
            if (k != i) f[i] = f[i] + expr::conjugate(g[k]) * G(k, i);
    }
    // no simplifier: decide "identically zero" by probing a few generic points
    bool vanishes = true;
    int probed = 0;
    for (cd z : {cd(0.31, 0.17), cd(-0.53, 0.71), cd(0.87, -0.29), cd(1.3, 1.1), cd(-1.7, -0.4)}) {
        try {
            const cd v = expr::evaluate(f[2], {z});
            const cd scale = expr::evaluate(g[0], {z}) * expr::evaluate(g[1], {z}) + expr::evaluate(g[2], {z});
            vanishes = vanishes && std::abs(v) < 1e-13 * (1.0 + std::norm(scale));
            ++probed;
        } catch (const expr::EvalError&) {
        }
    }
    if (expr::is_zero(f[2]) || (probed > 0 && vanishes))
        throw CatalogError("Wronskian construction: f_3 vanishes identically");
    CatalogEntry e;
    e.solution = AffineSolution::from_exprs({f[0] / f[2], f[1] / f[2]}, {}, {},
                                            name.empty() ? "wronskian" : std::move(name));
    e.kind = Classification::Mixed;
    e.grid = {{0.0, 0.0}, 1.0, 9};
    return e;
}

CatalogEntry nonsplitting_family(int N, const Expr& F, const std::vector<cd>& cs, int branch, int sign,
                                 std::string name) {
    if (N < 2) throw CatalogError("N must be at least 2");
    if (int(cs.size()) != N - 2) throw CatalogError("non-splitting family needs N-2 constants c_j");
    if (sign != 1 && sign != -1) throw CatalogError("psi sign must be +1 or -1");
    const double psi = sign * std::numbers::pi / 3.0 + 2.0 * std::numbers::pi * branch;
    const cd p = std::polar(1.0, psi);
    const Expr L = log_of(F), Lb = expr::conjugate(L), Fb = expr::conjugate(F);
    std::vector<Expr> w{F / Fb};
    expr::ParamMap params;
    for (int j = 1; j <= N - 2; ++j) {
        const std::string cj = "c" + std::to_string(j);
        params[cj] = cs[j - 1];
        w.push_back(expr::param(cj) / expr::param(cj, true) * expr::func(expr::Fn::Exp, c(p) * L - c(std::conj(p)) * Lb));
    }
    CatalogEntry e;
    e.solution = AffineSolution::from_exprs(w, {}, params, name.empty() ? "nonsplit-N" + std::to_string(N) : name);
    e.kind = Classification::NonSplitting;
    e.grid = {{1.5, 0.0}, 0.8, 9};
    const double Nd = N;
    const Expr Fp = expr::differentiate(F, expr::Var::Xi);
    const Expr ratio = abs2(Fp) / abs2(F);
    e.oracle.gxx = c(-(Nd - 3) / (Nd * Nd)) * Fp * Fp / (F * F);
    e.oracle.q = c((2 * Nd - 3) / (Nd * Nd)) * ratio;
    e.oracle.det = c(-3.0 * (Nd - 2) / (Nd * Nd * Nd)) * ratio * ratio;
    if (N == 3) {
        e.expected_K = 0.0;
        e.oracle.K = c(0.0);
        e.relation = Relation::NonSplitting;
        if (sign == 1 && branch == 0) {
            const Expr cc = abs2(expr::param("c1"));
            const Expr cb2 = expr::param("c1", true) * expr::param("c1", true);
            const Expr c2 = expr::param("c1") * expr::param("c1");
            const Expr lnF2 = expr::func(expr::Fn::Ln, F * Fb);
            const Expr mm = expr::func(expr::Fn::Exp, c(-p) * lnF2);
            const Expr ph = expr::func(expr::Fn::Exp, c(cd(0, std::sqrt(3.0))) * lnF2);
            const Expr k = c(1.0 / (6.0 * std::sqrt(3.0))) / cc;
            const Expr kF = c(1.0 / (6.0 * std::sqrt(3.0))) / (F * Fb);
            const Expr I = c(cd(0, 1));
            auto& X = e.oracle.coords;
            X[1] = I * k * mm * (cb2 * F - c2 * Fb * ph);
            X[2] = -k * mm * (cb2 * F + c2 * Fb * ph);
            X[3] = (c(cd(1, -std::sqrt(3.0))) * L + c(cd(1, std::sqrt(3.0))) * Lb) / c(6.0);
            X[4] = -(c(cd(std::sqrt(3.0), 1)) * L + c(cd(std::sqrt(3.0), -1)) * Lb) / c(6.0);
            X[5] = -kF * (F * F + Fb * Fb);
            X[6] = k * mm * (cb2 * Fb + c2 * F * ph);
            X[7] = I * kF * (F * F - Fb * Fb);
            X[8] = I * k * mm * (cb2 * Fb - c2 * F * ph);
        }
    }
    return e;
}

CatalogEntry nonsplitting_corrected(int N, const Expr& F, const std::vector<cd>& cs, std::string name) {
    if (N < 2) throw CatalogError("N must be at least 2");
    std::vector<cd> cv = cs;
    if (cv.empty()) cv.assign(N - 1, 1.0);
    if (int(cv.size()) != N - 1) throw CatalogError("corrected non-splitting family needs N-1 constants");
    const cd omega = std::polar(1.0, 2.0 * std::numbers::pi / N);
    const Expr L = log_of(F), Lb = expr::conjugate(L);
    std::vector<Expr> w;
    expr::ParamMap params;
    for (int j = 1; j < N; ++j) {
        if (std::abs(std::abs(cv[j - 1]) - 1.0) > 1e-12) throw CatalogError("c_j must be unimodular");
        const cd a = (1.0 - std::pow(omega, j)) / (1.0 - omega);
        const std::string cj = "c" + std::to_string(j);
        params[cj] = cv[j - 1];
        w.push_back(expr::param(cj) * expr::func(expr::Fn::Exp, c(a) * L - c(std::conj(a)) * Lb));
    }
    CatalogEntry e;
    e.solution = AffineSolution::from_exprs(w, {}, params, name.empty() ? "nonsplit-N" + std::to_string(N) : name);
    e.kind = Classification::NonSplitting;
    e.grid = {{1.5, 0.0}, 0.8, 9};
    const double s = std::sin(std::numbers::pi / N);
    const Expr Lp = expr::differentiate(L, expr::Var::Xi);
    e.oracle.q = c(1.0 / (4.0 * s * s)) * abs2(Lp);
    e.oracle.gxx = c(0.0);
    e.oracle.det = -(e.oracle.q * e.oracle.q);
    e.oracle.K = c(0.0);
    e.expected_K = 0.0;
    e.note = "constant-modulus family solving the equations for every N";
    return e;
}

namespace {

CatalogEntry cp1_entry(const std::string& w, const std::string& name, std::vector<cd> sing) {
    CatalogEntry e;
    e.solution = AffineSolution::from_strings({w}, {}, {}, name);
    e.solution.singularities = std::move(sing);
    e.kind = Classification::Holomorphic;
    e.relation = Relation::CP1Sphere;
    e.grid = {{0.0, 0.0}, 1.5, 9};
    e.expected_K = 4.0;
    e.oracle.gxx = c(0.0);
    e.oracle.coords = holomorphic_coordinates(e.solution);
    return e;
}

CatalogEntry soliton_entry() {
    CatalogEntry e;
    e.solution = AffineSolution::from_strings(
        {"tanh((xi-xibar)/2)", "-(tanh(xi)+tanh(xibar))/(sech(xi)+sech(xibar))"}, {}, {}, "soliton");
    e.kind = Classification::Mixed;
    e.relation = Relation::Soliton;
    e.expected_K = 1.0;
    e.grid = {{0.0, 0.0}, 1.2, 9};
    e.oracle.gxx = c(0.0);
    auto& X = e.oracle.coords;
    for (int k = 1; k <= 8; ++k) X[k] = c(0.0);
    X[1] = P("sech((xi+xibar)/2)*cosh((xi-xibar)/2)");
    X[6] = P("i*sech((xi+xibar)/2)*sinh((xi-xibar)/2)");
    X[7] = P("-tanh((xi+xibar)/2)");
    return e;
}

double max_el(const CatalogEntry& e, const std::vector<cd>& pts) {
    const SolutionEvaluator ev(e.solution);
    std::vector<double> r(pts.size());
    parallel_for(pts.size(), [&](std::size_t k) { r[k] = el_residual(model_at(ev, pts[k], 2)).max(); });
    double m = 0;
    for (double v : r) m = std::max(m, v);
    return m;
}

}  // namespace

const std::vector<CatalogEntry>& builtin_catalog() {
    static const std::vector<CatalogEntry> cat = [] {
        std::vector<CatalogEntry> v;
        v.push_back(cp1_entry("xi", "cp1-xi", {}));
        v.push_back(cp1_entry("xi^2", "cp1-xi2", {0.0}));
        v.push_back(monomial_family(1.0, 0.5, 1, 2, "cp2-special"));
        v.back().note = "K = 2";
        v.push_back(monomial_family(2.0, cd(1, -1), 3, 1, "cp2-monomial-31"));
        {
            CatalogEntry e;
            e.solution = AffineSolution::from_strings({"xi/(1+xi)", "exp(xi)"}, {}, {}, "cp2-rational-exp");
            e.solution.singularities = {-1.0};
            e.kind = Classification::Holomorphic;
            e.relation = Relation::CP2Affine;
            e.grid = {{0.0, 0.0}, 0.8, 9};
            e.oracle.gxx = c(0.0);
            e.oracle.coords = holomorphic_coordinates(e.solution);
            v.push_back(e);
        }
        v.push_back(soliton_entry());
        v.push_back(wronskian_mixed(c(1.0), expr::xi(), P("xi^2"), "wronskian-poly"));
        v.back().solution.singularities = {0.0};  // f_3 = xi (2 + |xi|^2)
        v.push_back(nonsplitting_family(2, expr::xi(), {}, 0, 1, "nonsplit-N2"));
        v.back().note = "det g = 0: a curve";
        v.push_back(nonsplitting_family(3, expr::xi(), {cd(1, 2)}, 0, 1, "nonsplit-N3"));
        v.push_back(nonsplitting_corrected(4, P("exp(xi)"), {}, "nonsplit-N4"));
        v.push_back(nonsplitting_corrected(5, P("exp(xi)"), {}, "nonsplit-N5"));
        for (const auto& e : v) {
            const double r = max_el(e, e.test_points());
            if (!(r < 1e-9))
                throw CatalogError("catalog entry '" + e.name() + "' fails the equations (" + std::to_string(r) + ")");
        }
        return v;
    }();
    return cat;
}

const CatalogEntry& catalog_entry(const std::string& name) {
    for (const auto& e : builtin_catalog())
        if (e.name() == name) return e;
    throw CatalogError("no catalog entry named '" + name + "'");
}

// ---------------------------------------------------------------- INI

std::string catalog_to_ini(const std::vector<CatalogEntry>& entries) {
    pt::ptree root;
    for (const auto& e : entries) {
        pt::ptree s;
        const auto& sol = e.solution;
        s.put("N", sol.N);
        for (int i = 0; i < sol.N - 1; ++i) {
            s.put("w" + std::to_string(i + 1), expr::to_string(sol.w[i]));
            s.put("wb" + std::to_string(i + 1), expr::to_string(sol.wb[i]));
        }
        for (const auto& [k, v] : sol.params) s.put("param_" + k, fmt(v));
        s.put("kind", classification_name(e.kind));
        s.put("relation", relation_name(e.relation));
        if (e.expected_K) s.put("expected_K", fmt(*e.expected_K));
        s.put("grid_center", fmt(e.grid.center));
        s.put("grid_half_width", fmt(e.grid.half_width));
        s.put("grid_resolution", e.grid.resolution);
        std::string sing;
        for (cd z : sol.singularities) sing += (sing.empty() ? "" : "; ") + fmt(z);
        if (!sing.empty()) s.put("singularities", sing);
        if (sol.formal) s.put("formal", "true");
        if (e.oracle.q) s.put("oracle_q", expr::to_string(e.oracle.q));
        if (e.oracle.gxx) s.put("oracle_gxx", expr::to_string(e.oracle.gxx));
        if (e.oracle.K) s.put("oracle_K", expr::to_string(e.oracle.K));
        if (e.oracle.det) s.put("oracle_det", expr::to_string(e.oracle.det));
        for (const auto& [k, x] : e.oracle.coords) s.put("oracle_X" + std::to_string(k), expr::to_string(x));
        if (!e.note.empty()) s.put("note", e.note);
        root.push_back({sol.name, s});
    }
    std::ostringstream os;
    pt::write_ini(os, root);
    return os.str();
}

std::vector<CatalogEntry> catalog_from_ini(const std::string& text) {
    pt::ptree root;
    std::istringstream is(text);
    try {
        pt::read_ini(is, root);
    } catch (const pt::ini_parser_error& ex) {
        throw CatalogError(std::string("catalog: ") + ex.what());
    }
    std::vector<CatalogEntry> out;
    for (const auto& [name, s] : root) {
        try {
            CatalogEntry e;
            const int N = s.get<int>("N");
            std::vector<std::string> w, wb;
            expr::ParamMap params;
            for (int i = 1; i < N; ++i) {
                w.push_back(trim_quotes(s.get<std::string>("w" + std::to_string(i))));
                if (auto b = s.get_optional<std::string>("wb" + std::to_string(i))) wb.push_back(trim_quotes(*b));
            }
            if (!wb.empty() && int(wb.size()) != N - 1) throw CatalogError("give all or none of the wb_i");
            for (const auto& [k, v] : s)
                if (k.rfind("param_", 0) == 0) params[k.substr(6)] = parse_complex(trim_quotes(v.data()));
            e.solution = AffineSolution::from_strings(w, wb, params, name);
            if (e.solution.N != N) throw CatalogError("N does not match the number of fields");
            e.solution.formal = s.get<std::string>("formal", "false") == "true";
            e.kind = classification_from_name(s.get<std::string>("kind", "holomorphic"));
            e.relation = relation_from_name(s.get<std::string>("relation", "none"));
            if (auto k = s.get_optional<std::string>("expected_K")) e.expected_K = parse_complex(*k).real();
            e.grid.center = parse_complex(s.get<std::string>("grid_center", "0"));
            e.grid.half_width = parse_complex(s.get<std::string>("grid_half_width", "1")).real();
            e.grid.resolution = s.get<int>("grid_resolution", 9);
            if (auto sg = s.get_optional<std::string>("singularities")) {
                std::stringstream ss(*sg);
                std::string item;
                while (std::getline(ss, item, ';'))
                    if (item.find_first_not_of(" \t") != std::string::npos)
                        e.solution.singularities.push_back(parse_complex(item));
            }
            auto ox = [&](const char* key) -> Expr {
                auto v = s.get_optional<std::string>(key);
                return v ? P(trim_quotes(*v)) : nullptr;
            };
            e.oracle.q = ox("oracle_q");
            e.oracle.gxx = ox("oracle_gxx");
            e.oracle.K = ox("oracle_K");
            e.oracle.det = ox("oracle_det");
            for (int k = 1; k <= 8; ++k)
                if (Expr x = ox(("oracle_X" + std::to_string(k)).c_str())) e.oracle.coords[k] = x;
            e.note = s.get<std::string>("note", "");
            out.push_back(std::move(e));
        } catch (const pt::ptree_error& ex) {
            throw CatalogError("catalog entry '" + name + "': " + ex.what());
        } catch (const expr::ParseError& ex) {
            throw CatalogError("catalog entry '" + name + "': " + ex.what());
        } catch (const ModelError& ex) {
            throw CatalogError("catalog entry '" + name + "': " + ex.what());
        }
    }
    return out;
}

std::vector<CatalogEntry> load_catalog(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw CatalogError("cannot open catalog " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return catalog_from_ini(ss.str());
}

void save_catalog(const std::string& path, const std::vector<CatalogEntry>& entries) {
    std::ofstream f(path);
    if (!f) throw CatalogError("cannot write catalog " + path);
    f << catalog_to_ini(entries);
}

// ---------------------------------------------------------------- verify

double relation_residual(Relation r, const std::vector<double>& c) {
    switch (r) {
        case Relation::CP1Sphere: return std::abs(sphere_relation_cp1(c));
        case Relation::CP2Affine: return std::abs(affine_sphere_relation_cp2(c));
        case Relation::Soliton: return std::abs(soliton_relation(c));
        case Relation::NonSplitting: return nonsplitting_relation(c);
        case Relation::None: break;
    }
    return 0.0;
}

VerifyReport verify_entry(const CatalogEntry& e, const VerifyTolerances& tol) {
    VerifyReport r;
    r.name = e.name();
    const auto pts = e.test_points();
    if (pts.empty()) {
        r.message = "empty test grid";
        return r;
    }
    const SolutionEvaluator ev(e.solution);
    const auto& params = e.solution.params;
    struct Row {
        double el = 0, K = 0, oracle = 0;
    };
    std::vector<Row> rows(pts.size());
    const bool want_K = e.expected_K || e.oracle.K;
    parallel_for(pts.size(), [&](std::size_t k) {
        const PointModel m = model_at(ev, pts[k]);
        Row& row = rows[k];
        row.el = el_residual(m).max();
        const expr::EvalPoint p{pts[k], &params};
        auto rel = [](cd a, cd b) { return std::abs(a - b) / (1.0 + std::abs(b)); };
        const MetricSample g = metric(m);
        if (e.oracle.q) row.oracle = std::max(row.oracle, rel(g.g_xb, expr::evaluate(e.oracle.q, p)));
        if (e.oracle.gxx) row.oracle = std::max(row.oracle, rel(g.g_xx, expr::evaluate(e.oracle.gxx, p)));
        if (e.oracle.det) row.oracle = std::max(row.oracle, rel(g.det, expr::evaluate(e.oracle.det, p)));
        if (want_K) {
            const double K = gaussian_curvature(m);
            if (e.expected_K) row.K = std::abs(K - *e.expected_K);
            if (e.oracle.K) row.oracle = std::max(row.oracle, rel(K, expr::evaluate(e.oracle.K, p)));
        }
    });
    for (const auto& row : rows) {
        r.el = std::max(r.el, row.el);
        r.K_error = std::max(r.K_error, row.K);
        r.oracle_error = std::max(r.oracle_error, row.oracle);
    }
    const HolomorphyReport h = holomorphy_check(ev, pts);
    switch (e.kind) {
        case Classification::Holomorphic: r.classification_ok = h.kind == Holomorphy::Holomorphic; break;
        case Classification::AntiHolomorphic: r.classification_ok = h.kind == Holomorphy::AntiHolomorphic; break;
        default: r.classification_ok = h.kind == Holomorphy::Mixed;
    }

    if (e.relation != Relation::None) {
        // coordinates: closed form X(xi) for holomorphic entries, otherwise the
        // path integral from the first grid point plus the closed form there
        std::vector<std::vector<double>> coords(pts.size());
        const cd base = pts.front();
        std::vector<double> X0(e.N() == 2 ? 3 : 8, 0.0);
        for (const auto& [k, x] : e.oracle.coords) X0[k - 1] = expr::evaluate(x, {base, &params}).real();
        parallel_for(pts.size(), [&](std::size_t k) {
            if (e.kind == Classification::Holomorphic) {
                coords[k] = immerse_holomorphic(ev, pts[k]).coords;
            } else {
                PathSpec path = PathSpec::straight(base, pts[k]);
                path.singularities = e.solution.singularities;
                auto c = immerse_by_path(ev, path).coords;
                for (std::size_t i = 0; i < c.size(); ++i) c[i] += X0[i];
                coords[k] = std::move(c);
            }
        });
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const double v = relation_residual(e.relation, coords[k]);
            r.relation = std::max(r.relation, v);
            for (const auto& [i, x] : e.oracle.coords) {
                const double ref = expr::evaluate(x, {pts[k], &params}).real();
                r.oracle_error = std::max(r.oracle_error, std::abs(coords[k][i - 1] - ref) / (1.0 + std::abs(ref)));
            }
        }
    }
    std::ostringstream msg;
    if (!(r.el < tol.el)) msg << "EL residual " << r.el << "; ";
    if (!r.classification_ok) msg << "classification is " << holomorphy_name(h.kind) << "; ";
    if (!(r.K_error < tol.K)) msg << "curvature off by " << r.K_error << "; ";
    if (!(r.oracle_error < tol.oracle)) msg << "closed form off by " << r.oracle_error << "; ";
    if (!(r.relation < tol.relation)) msg << "surface relation " << r.relation << "; ";
    r.message = msg.str();
    r.ok = r.message.empty();
    if (r.ok) r.message = "ok";
    return r;
}

}  // namespace sigsurf
