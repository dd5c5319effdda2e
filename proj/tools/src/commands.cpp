#include "commands.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include <sigsurf/basis.hpp>
#include <sigsurf/geometry.hpp>
#include <sigsurf/immersion.hpp>
#include <sigsurf/parallel.hpp>
#include <sigsurf/su3frame.hpp>
#include <sigsurf/symmetry.hpp>

#include "output.hpp"

namespace sigsurf::cli {

namespace {

std::vector<cd> points_of(const RunConfig& c) {
    auto pts = grid_points(c.grid, c.entry.solution.singularities);
    if (pts.empty()) throw ConfigError("grid has no points after excluding singularities");
    return pts;
}

Output output_for(const RunConfig& c, const char* cmd) { return Output(c.out_dir, c.hash, cmd); }

json solution_json(const AffineSolution& s) {
    json j;
    j["name"] = s.name;
    j["N"] = s.N;
    j["w"] = json::array();
    j["wb"] = json::array();
    for (const auto& e : s.w) j["w"].push_back(expr::to_string(e));
    for (const auto& e : s.wb) j["wb"].push_back(expr::to_string(e));
    json p = json::object();
    for (const auto& [k, v] : s.params) p[k] = cjson(v);
    j["params"] = p;
    return j;
}

struct Worst {
    double value = 0;
    cd at{0.0, 0.0};
    void take(double v, cd xi) {
        if (!(v <= value)) {  // NaN sticks
            if (std::isnan(value)) return;
            value = v;
            at = xi;
        }
    }
    json to_json() const { return {{"max", value}, {"at", cjson(at)}}; }
};

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace

// ------------------------------------------------------------------ check

int cmd_check(const RunConfig& c) {
    const auto pts = points_of(c);
    const SolutionEvaluator ev(c.entry.solution);
    std::vector<double> el(pts.size()), dc(pts.size());
    parallel_for(pts.size(), [&](std::size_t k) {
        const PointModel m = model_at(ev, pts[k]);
        el[k] = el_residual(m).max();
        dc[k] = dc_residual(m);
    }, c.threads);
    Worst wel, wdc;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        wel.take(el[k], pts[k]);
        wdc.take(dc[k], pts[k]);
    }
    const HolomorphyReport h = holomorphy_check(ev, pts);

    bool ok = wel.value < c.tol.el;
    if (c.tol.dc) ok = ok && wdc.value < *c.tol.dc;
    bool class_ok = true;
    if (c.entry.kind == Classification::Holomorphic) class_ok = h.kind == Holomorphy::Holomorphic;
    if (c.entry.kind == Classification::AntiHolomorphic) class_ok = h.kind == Holomorphy::AntiHolomorphic;
    ok = ok && class_ok;

    json body;
    body["solution"] = solution_json(c.entry.solution);
    body["points"] = pts.size();
    body["el_residual"] = wel.to_json();
    body["dc_residual"] = wdc.to_json();
    body["holomorphy"] = {{"kind", holomorphy_name(h.kind)},
                          {"max_dbar_w", h.max_dbar_w},
                          {"max_d_w", h.max_d_w},
                          {"declared", classification_name(c.entry.kind)},
                          {"consistent", class_ok}};
    body["tolerances"] = {{"el", c.tol.el}, {"dc", c.tol.dc ? json(*c.tol.dc) : json(nullptr)}};
    body["ok"] = ok;
    const auto path = output_for(c, "check").write_json("check.json", body);
    std::cout << "check " << c.entry.name() << ": EL max " << wel.value << " at " << wel.at << ", DC max "
              << wdc.value << ", " << holomorphy_name(h.kind) << " -> " << verdict(ok) << " (" << path << ")\n";
    return ok ? kOk : kFail;
}

// ------------------------------------------------------------------ geom

int cmd_geom(const RunConfig& c) {
    const auto pts = points_of(c);
    const SolutionEvaluator ev(c.entry.solution);
    const auto samples = geometry_grid(ev, pts);
    std::vector<std::vector<double>> rows;
    rows.reserve(samples.size());
    double kerr = 0;
    for (const auto& s : samples) {
        rows.push_back({s.xi.real(), s.xi.imag(), s.q, s.J.real(), s.J.imag(), s.K, s.H_norm, s.det});
        if (c.entry.expected_K) kerr = std::max(kerr, std::isfinite(s.K) ? std::abs(s.K - *c.entry.expected_K) : INFINITY);
    }
    const auto path = output_for(c, "geom").write_csv(
        "geom.csv", {"xi1", "xi2", "q", "ReJ", "ImJ", "K", "H_norm", "det_g"}, rows);
    bool ok = true;
    std::cout << "geom " << c.entry.name() << ": " << rows.size() << " points -> " << path << "\n";
    if (c.entry.expected_K) {
        ok = kerr < c.tol.K;
        std::cout << "  max |K - " << *c.entry.expected_K << "| = " << kerr << " " << verdict(ok) << "\n";
    }
    return ok ? kOk : kFail;
}

// ------------------------------------------------------------------ immerse

int cmd_immerse(const RunConfig& c) {
    const auto pts = points_of(c);
    const SolutionEvaluator ev(c.entry.solution);
    std::string method = c.get("immerse.method", "auto");
    if (method == "auto") method = holomorphy_check(ev, pts).kind == Holomorphy::Mixed ? "path" : "holomorphic";
    if (method != "path" && method != "holomorphic") throw ConfigError("immerse.method must be auto, path or holomorphic");
    const cd base = c.get_complex("immerse.base", pts.front());
    const double qtol = c.get_real("immerse.quadrature_tol", 1e-10);
    const int N = c.entry.N();
    const bool has_basis = N == 2 || N == 3;

    // path integrals give X - X(base); the closed form at the base fixes the constant
    std::vector<double> X0(N == 2 ? 3 : 8, 0.0);
    const bool offset = method == "path" && c.get("immerse.offset", "closed_form") == "closed_form" && has_basis;
    if (offset)
        for (const auto& [k, x] : c.entry.oracle.coords)
            X0[k - 1] = expr::evaluate(x, {base, &c.entry.solution.params}).real();

    std::vector<ImmersionField> fields(pts.size());
    parallel_for(pts.size(), [&](std::size_t k) {
        if (method == "holomorphic") {
            fields[k] = immerse_holomorphic(ev, pts[k], qtol);
        } else {
            PathSpec p = PathSpec::straight(base, pts[k]);
            p.tol = qtol;
            p.singularities = c.entry.solution.singularities;
            fields[k] = immerse_by_path(ev, p);
        }
    }, c.threads);

    const bool rel = c.entry.relation != Relation::None && has_basis;
    std::vector<std::string> cols{"xi1", "xi2"};
    if (has_basis) {
        for (int i = 1; i <= (N == 2 ? 3 : 8); ++i) cols.push_back("X" + std::to_string(i));
    } else {
        for (int i = 1; i <= N; ++i)
            for (int j = 1; j <= N; ++j) {
                cols.push_back("ReX" + std::to_string(i) + std::to_string(j));
                cols.push_back("ImX" + std::to_string(i) + std::to_string(j));
            }
    }
    if (rel) cols.push_back("relation");
    std::vector<std::vector<double>> rows;
    Worst wrel;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        std::vector<double> r{pts[k].real(), pts[k].imag()};
        if (has_basis) {
            auto x = fields[k].coords;
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += X0[i];
            r.insert(r.end(), x.begin(), x.end());
            if (rel) {
                const double v = relation_residual(c.entry.relation, x);
                wrel.take(v, pts[k]);
                r.push_back(v);
            }
        } else {
            const Mat& X = fields[k].X;
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) {
                    r.push_back(X(i, j).real());
                    r.push_back(X(i, j).imag());
                }
        }
        rows.push_back(std::move(r));
    }
    const auto path = output_for(c, "immerse").write_csv("immerse.csv", cols, rows);
    std::cout << "immerse " << c.entry.name() << " (" << method << "): " << rows.size() << " points -> " << path << "\n";
    bool ok = true;
    if (rel) {
        ok = wrel.value < c.tol.relation;
        std::cout << "  " << relation_name(c.entry.relation) << " relation max " << wrel.value << " at " << wrel.at << " "
                  << verdict(ok) << "\n";
    }
    return ok ? kOk : kFail;
}

// ------------------------------------------------------------------ frame

int cmd_frame(const RunConfig& c) {
    if (c.entry.N() != 3) throw ConfigError("frame needs an N = 3 solution");
    std::vector<cd> pts = c.has("frame.points") ? parse_complex_list(c.get("frame.points", "")) : points_of(c);
    if (pts.empty()) throw ConfigError("frame.points is empty");
    const double gauge = c.get_real("frame.phi", 0.0);
    const double h = c.get_real("frame.fd_step", 1e-5);
    const bool appendix = c.get("frame.appendix", "false") == "true";
    const SolutionEvaluator ev(c.entry.solution);
    if (holomorphy_check(ev, pts).kind != Holomorphy::Holomorphic) throw ConfigError("frame needs a holomorphic solution");

    struct Row {
        bool done = false;
        std::string skipped;
        MovingFrame f;
        FrameChecks chk;
        GaussWeingarten gw;
        AppendixComparison app;
    };
    std::vector<Row> rows(pts.size());
    parallel_for(pts.size(), [&](std::size_t k) {
        Row& r = rows[k];
        try {
            r.f = moving_frame(ev, pts[k], gauge);
            r.chk = frame_checks(ev, pts[k], r.f);
            r.gw = gauss_weingarten(ev, pts[k], gauge, h);
            if (appendix) r.app = compare_appendix(r.f, pts[k]);
            r.done = true;
        } catch (const FrameError& e) {
            r.skipped = e.what();  // frame undefined here (e.g. W = 0)
        }
    }, c.threads);

    double worst_chk = 0, worst_gw = 0, worst_app = 0;
    std::size_t done = 0;
    json arr = json::array();
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const Row& r = rows[k];
        json p;
        p["xi"] = cjson(pts[k]);
        if (!r.done) {
            p["skipped"] = r.skipped;
            arr.push_back(p);
            continue;
        }
        ++done;
        const FrameParams& fp = r.f.params;
        p["u"] = fp.u;
        p["alpha"] = fp.alpha;
        p["phi"] = fp.phi;
        p["a1"] = cjson(fp.a1);
        p["b1"] = cjson(fp.b1);
        p["a2"] = cjson(fp.a2);
        p["b2"] = cjson(fp.b2);
        p["phi_matrix"] = mjson(r.f.phi);
        json eta = json::array();
        for (const auto& m : r.f.eta) eta.push_back(mjson(m));
        p["eta"] = eta;
        p["checks"] = {{"orthonormality", r.chk.orthonormality}, {"tangency", r.chk.tangency},
                       {"conformality", r.chk.conformality},     {"eta2_vs_iK", r.chk.eta2_vs_K},
                       {"eta1_vs_iKd", r.chk.eta1_vs_Kd},         {"half_eu_vs_q", r.chk.half_eu_vs_q},
                       {"unitarity", r.chk.unitarity}};
        json Jn = json::array(), Hn = json::array();
        for (int j = 0; j < 6; ++j) {
            Jn.push_back(cjson(r.gw.Jn[j]));
            Hn.push_back(cjson(r.gw.Hn[j]));
        }
        p["gauss_weingarten"] = {{"J", Jn},
                                 {"H", Hn},
                                 {"S", mjson(r.gw.S)},
                                 {"res_dd", r.gw.res_dd},
                                 {"res_ddb", r.gw.res_ddb},
                                 {"res_deta", r.gw.res_deta},
                                 {"antisymmetry", r.gw.antisymmetry},
                                 {"compatibility", r.gw.compatibility}};
        worst_chk = std::max(worst_chk, r.chk.max());
        worst_gw = std::max(worst_gw, r.gw.max());
        if (appendix) {
            p["appendix"] = {{"eta34", r.app.eta34}, {"subspace", r.app.subspace}, {"entrywise58", r.app.entrywise58}};
            worst_app = std::max({worst_app, r.app.eta34, r.app.subspace});
        }
        arr.push_back(p);
    }
    const bool ok = done > 0 && worst_chk < c.tol.frame && worst_gw < c.tol.gw && (!appendix || worst_app < c.tol.frame * 10);
    json body;
    body["solution"] = solution_json(c.entry.solution);
    body["summary"] = {{"points", pts.size()}, {"computed", done}, {"max_check", worst_chk},
                       {"max_gauss_weingarten", worst_gw}, {"ok", ok}};
    if (appendix) body["summary"]["max_appendix"] = worst_app;
    body["points"] = arr;
    const auto path = output_for(c, "frame").write_json("frame.json", body);
    std::cout << "frame " << c.entry.name() << ": " << done << "/" << pts.size() << " points, checks " << worst_chk
              << ", GW " << worst_gw << " -> " << verdict(ok) << " (" << path << ")\n";
    return ok ? kOk : kFail;
}

// ------------------------------------------------------------------ charge / willmore

namespace {
json integral_json(const IntegralReport& r) {
    json lv = json::array();
    for (cd v : r.levels) lv.push_back(cjson(v));
    return {{"value", cjson(r.value)}, {"levels", lv}, {"rel_change", r.rel_change}};
}
}  // namespace

int cmd_charge(const RunConfig& c) {
    const SolutionEvaluator ev(c.entry.solution);
    const int res = c.get_int("charge.resolution", 8);
    const int levels = c.get_int("charge.levels", 3);
    const double mc = c.get_real("charge.c", 2.0);
    const double tol = c.get_real("charge.tolerance", c.tol.refinement);
    if (res < 1 || levels < 2) throw ConfigError("charge needs resolution >= 1 and levels >= 2");
    const IntegralReport r = topological_charge(ev, res, levels, mc);
    const bool ok = std::isfinite(std::abs(r.value)) && r.rel_change < tol;
    json body;
    body["solution"] = solution_json(c.entry.solution);
    body["measure_c"] = mc;
    body["resolution"] = res;
    body["charge"] = integral_json(r);
    body["ok"] = ok;
    const auto path = output_for(c, "charge").write_json("charge.json", body);
    std::cout << "charge " << c.entry.name() << ": Q = " << r.value.real() << ", level change " << r.rel_change << " -> "
              << verdict(ok) << " (" << path << ")\n";
    return ok ? kOk : kFail;
}

int cmd_willmore(const RunConfig& c) {
    const SolutionEvaluator ev(c.entry.solution);
    const int res = c.get_int("willmore.resolution", 4);
    const int levels = c.get_int("willmore.levels", 3);
    const double mc = c.get_real("willmore.c", 2.0);
    const double tol = c.get_real("willmore.tolerance", c.tol.refinement);
    if (res < 1 || levels < 2) throw ConfigError("willmore needs resolution >= 1 and levels >= 2");

    const auto pts = points_of(c);
    std::vector<cd> dens(pts.size());
    parallel_for(pts.size(), [&](std::size_t k) { dens[k] = willmore_density(first_order_at(ev, pts[k])); }, c.threads);
    bool finite = true;
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        finite = finite && std::isfinite(dens[k].real()) && std::isfinite(dens[k].imag());
        rows.push_back({pts[k].real(), pts[k].imag(), dens[k].real(), dens[k].imag()});
    }
    Output out = output_for(c, "willmore");
    out.write_csv("willmore_density.csv", {"xi1", "xi2", "Re_density", "Im_density"}, rows);

    const IntegralReport r = willmore(ev, c.grid, res, levels, mc);
    const bool ok = finite && r.rel_change < tol;
    json body;
    body["solution"] = solution_json(c.entry.solution);
    body["region"] = {{"center", cjson(c.grid.center)}, {"half_width", c.grid.half_width}};
    body["measure_c"] = mc;
    body["resolution"] = res;
    body["integrand_finite"] = finite;
    body["willmore"] = integral_json(r);
    body["ok"] = ok;
    const auto path = out.write_json("willmore.json", body);
    std::cout << "willmore " << c.entry.name() << ": W = " << r.value << ", level change " << r.rel_change
              << (finite ? "" : ", integrand not finite") << " -> " << verdict(ok) << " (" << path << ")\n";
    return ok ? kOk : kFail;
}

// ------------------------------------------------------------------ symmetry

namespace {

expr::Expr parse_expr(const RunConfig& c, const std::string& key, const std::string& def) {
    const std::string s = c.get(key, def);
    if (s.empty()) return nullptr;
    try {
        return expr::parse(s);
    } catch (const expr::ParseError& e) {
        throw ConfigError(key + ": " + e.what());
    }
}

json slope_json(const std::string& label, const SlopeReport& r, const AffineSolution& moved) {
    json j;
    j["generator"] = label;
    j["eps"] = r.eps;
    j["residual"] = r.residual;
    j["slope"] = r.exact ? json(nullptr) : json(r.slope);
    j["exact"] = r.exact;
    j["transformed"] = solution_json(moved);
    return j;
}

// max over the grid of EL residual of `t` and of |q_t - q_s|
std::pair<Worst, Worst> invariance(const AffineSolution& s, const AffineSolution& t, const std::vector<cd>& pts,
                                   unsigned threads) {
    const SolutionEvaluator es(s), et(t);
    std::vector<double> el(pts.size()), dq(pts.size());
    parallel_for(pts.size(), [&](std::size_t k) {
        const PointModel m = model_at(et, pts[k]);
        el[k] = el_residual(m).max();
        dq[k] = std::abs(scalar_invariants(m).q - scalar_invariants_at(es, pts[k]).q);
    }, threads);
    Worst wel, wq;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        wel.take(el[k], pts[k]);
        wq.take(dq[k], pts[k]);
    }
    return {wel, wq};
}

}  // namespace

int cmd_symmetry(const RunConfig& c) {
    const auto pts = points_of(c);
    const AffineSolution& s = c.entry.solution;
    const std::string action = c.get("symmetry.action", "generators");
    const double eps = c.get_real("symmetry.eps", 1e-3);
    json body;
    body["solution"] = solution_json(s);
    body["action"] = action;
    bool ok = true;
    std::ostringstream say;

    if (action == "generators" || action == "generator" || action == "custom") {
        std::vector<GeneratorDescriptor> gens;
        double expected = 2.0;
        if (action == "custom") {
            GeneratorDescriptor g;
            g.kind = GeneratorKind::Custom;
            for (int i = 1; i < s.N; ++i) {
                g.phi.push_back(parse_expr(c, "symmetry.phi" + std::to_string(i), "0"));
                g.psi.push_back(parse_expr(c, "symmetry.psi" + std::to_string(i), "0"));
            }
            gens.push_back(g);
            expected = c.get_real("symmetry.expected_slope", 2.0);
        } else {
            auto all = generator_list(s.N, parse_expr(c, "symmetry.eta1", "xi^2"), parse_expr(c, "symmetry.eta2", "xibar^2"));
            if (action == "generator") {
                const std::string want = c.get("symmetry.generator", "");
                for (auto& g : all)
                    if (g.label() == want) gens.push_back(g);
                if (gens.empty()) throw ConfigError("unknown generator '" + want + "' for N = " + std::to_string(s.N));
            } else {
                gens = all;
            }
        }
        json arr = json::array();
        for (const auto& g : gens) {
            SlopeReport r;
            try {
                r = infinitesimal_symmetry_order(g, s, pts);
            } catch (const SymmetryError& e) {
                throw ConfigError(e.what());  // bad generator spec or a base that is not a solution
            }
            const bool gok = r.exact || std::abs(r.slope - expected) <= c.tol.symmetry_slope;
            ok = ok && gok;
            json j = slope_json(g.label(), r, apply_generator(g, s, eps));
            j["ok"] = gok;
            arr.push_back(j);
            say << "  " << g.label() << ": " << (r.exact ? std::string("exact") : "slope " + num(r.slope)) << " "
                << verdict(gok) << "\n";
        }
        body["expected_slope"] = expected;
        body["slope_tolerance"] = c.tol.symmetry_slope;
        body["generators"] = arr;
        body["finite_generator_count"] = finite_generator_count(s.N);
    } else if (action == "projective" || action == "su2") {
        AffineSolution t;
        try {
            if (action == "projective") {
                const int seed = c.get_int("symmetry.seed", 1);
                const Mat u = random_unitary(s.N, (unsigned long long)seed);
                body["seed"] = seed;
                body["unitary"] = mjson(u);
                t = apply_projective(u, s);
            } else {
                const cd a = c.get_complex("symmetry.a", 1.0), b = c.get_complex("symmetry.b", 0.0);
                body["a"] = cjson(a);
                body["b"] = cjson(b);
                t = apply_generalized_su2(a, b, s);
            }
            check_chart(t, pts);
        } catch (const SymmetryError& e) {
            throw ConfigError(e.what());
        }
        const auto [wel, wq] = invariance(s, t, pts, c.threads);
        ok = wel.value < c.tol.el && wq.value < c.tol.invariance;
        body["transformed"] = solution_json(t);
        body["el_residual"] = wel.to_json();
        body["q_change"] = wq.to_json();
        say << "  EL " << wel.value << ", |dq| " << wq.value << " " << verdict(ok) << "\n";
    } else {
        throw ConfigError("symmetry.action must be generators, generator, custom, projective or su2");
    }
    body["ok"] = ok;
    const auto path = output_for(c, "symmetry").write_json("symmetry.json", body);
    std::cout << "symmetry " << s.name << " (" << action << ") -> " << verdict(ok) << " (" << path << ")\n" << say.str();
    return ok ? kOk : kFail;
}

// ------------------------------------------------------------------ catalog

namespace {
std::vector<CatalogEntry> catalog_entries(const CatalogOptions& o) {
    if (o.file.empty()) return builtin_catalog();
    try {
        return load_catalog(o.file);
    } catch (const CatalogError& e) {
        throw ConfigError(e.what());
    } catch (const expr::ParseError& e) {
        throw ConfigError(std::string("catalog expression: ") + e.what());
    }
}
}  // namespace

int cmd_catalog_list(const CatalogOptions& o) {
    for (const auto& e : catalog_entries(o)) {
        std::cout << e.name() << "  N=" << e.N() << "  " << classification_name(e.kind);
        if (e.expected_K) std::cout << "  K=" << *e.expected_K;
        if (e.relation != Relation::None) std::cout << "  relation=" << relation_name(e.relation);
        std::cout << "\n";
    }
    return kOk;
}

int cmd_catalog_verify(const CatalogOptions& o) {
    auto entries = catalog_entries(o);
    if (!o.name.empty()) {
        std::erase_if(entries, [&](const CatalogEntry& e) { return e.name() != o.name; });
        if (entries.empty()) throw ConfigError("no catalog entry named '" + o.name + "'");
    }
    std::vector<VerifyReport> reps(entries.size());
    parallel_for(entries.size(), [&](std::size_t k) { reps[k] = verify_entry(entries[k]); }, 1);
    bool ok = true;
    json arr = json::array();
    for (const auto& r : reps) {
        ok = ok && r.ok;
        arr.push_back({{"name", r.name}, {"el", r.el}, {"classification_ok", r.classification_ok},
                       {"K_error", r.K_error}, {"oracle_error", r.oracle_error}, {"relation", r.relation},
                       {"ok", r.ok}, {"message", r.message}});
        std::cout << verdict(r.ok) << "  " << r.name << ": " << r.message << "\n";
    }
    json body;
    body["source"] = o.file.empty() ? "builtin" : o.file;
    body["entries"] = arr;
    body["ok"] = ok;
    Output(o.out_dir, sha256_hex(catalog_to_ini(entries)), "catalog").write_json("catalog_verify.json", body);
    return ok ? kOk : kFail;
}

int cmd_catalog_export(const CatalogOptions& o) {
    const auto entries = catalog_entries(o);
    try {
        save_catalog(o.export_path, entries);
    } catch (const CatalogError& e) {
        throw ConfigError(e.what());
    }
    std::cout << "wrote " << entries.size() << " entries to " << o.export_path << "\n";
    return kOk;
}

}  // namespace sigsurf::cli
