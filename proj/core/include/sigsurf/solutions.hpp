#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sigsurf/grid.hpp"
#include "sigsurf/model.hpp"

namespace sigsurf {

struct CatalogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Classification { Holomorphic, AntiHolomorphic, Mixed, NonSplitting };
enum class Relation { None, CP1Sphere, CP2Affine, Soliton, NonSplitting };

const char* classification_name(Classification c);
const char* relation_name(Relation r);
Classification classification_from_name(const std::string& s);
Relation relation_from_name(const std::string& s);

// Closed-form oracles, all expressions in xi, xibar and the entry parameters.
// q is the conformal factor g_{xi xibar}; the first fundamental form reads
// I = 2 q dxi dxibar for conformal entries. gxx = g_{xi xi} = -J.
// coords: real coordinates by (1-based) index, including integration constants.
struct ClosedForms {
    expr::Expr q, gxx, K, det;
    std::map<int, expr::Expr> coords;
};

struct CatalogEntry {
    AffineSolution solution;
    Classification kind = Classification::Holomorphic;
    std::optional<double> expected_K;
    Relation relation = Relation::None;
    GridSpec grid{{0.0, 0.0}, 1.0, 9};   // declared test grid
    ClosedForms oracle;
    std::string note;

    const std::string& name() const { return solution.name; }
    int N() const { return solution.N; }
    std::vector<cd> test_points() const { return grid_points(grid, solution.singularities); }
};

// (w1, w2) = (a1 xi^m, a2 xi^n) with the metric and curvature oracles.
CatalogEntry monomial_family(cd a1, cd a2, double m, double n, std::string name = {});

// w_i = f_i / f_3 with f_i = sum_{k != i} conj(g_k) G_ki, G_ij = g_i dg_j - g_j dg_i.
CatalogEntry wronskian_mixed(const expr::Expr& g1, const expr::Expr& g2, const expr::Expr& g3,
                             std::string name = {});

// w1 = F / Fbar, w_{j+1} = (c_j / cbar_j) F^{e^{i psi}} / Fbar^{e^{-i psi}},
// psi = sign pi/3 + 2 pi m. c must hold N-2 constants.
CatalogEntry nonsplitting_family(int N, const expr::Expr& F, const std::vector<cd>& c, int branch = 0,
                                 int sign = 1, std::string name = {});

// w_j = c_j exp(a_j L - conj(a_j) Lbar), L = ln F, a_j = (1 - omega^j)/(1 - omega),
// omega = e^{2 pi i/N}; c_j unimodular (N-1 constants).
CatalogEntry nonsplitting_corrected(int N, const expr::Expr& F, const std::vector<cd>& c = {},
                                    std::string name = {});

// Closed-form coordinates of holomorphic CP^1 / CP^2 solutions in terms of w.
std::map<int, expr::Expr> holomorphic_coordinates(const AffineSolution& s);

// The builtin entries; each is registered only after verify() succeeds.
const std::vector<CatalogEntry>& builtin_catalog();
const CatalogEntry& catalog_entry(const std::string& name);

// Structured-text (INI) round trip.
std::string catalog_to_ini(const std::vector<CatalogEntry>& entries);
std::vector<CatalogEntry> catalog_from_ini(const std::string& text);
std::vector<CatalogEntry> load_catalog(const std::string& path);
void save_catalog(const std::string& path, const std::vector<CatalogEntry>& entries);

// Residual of the entry's surface relation at one coordinate vector (0 for None).
double relation_residual(Relation r, const std::vector<double>& coords);

struct VerifyReport {
    std::string name;
    double el = 0;              // max EL residual on the test grid
    bool classification_ok = true;
    double K_error = 0;         // vs expected_K
    double oracle_error = 0;    // max over attached closed forms
    double relation = 0;        // surface relation residual
    bool ok = false;
    std::string message;
};
struct VerifyTolerances {
    double el = 1e-9;
    double K = 1e-7;
    double oracle = 1e-9;
    double relation = 1e-10;
};
VerifyReport verify_entry(const CatalogEntry& e, const VerifyTolerances& tol = {});

}  // namespace sigsurf
