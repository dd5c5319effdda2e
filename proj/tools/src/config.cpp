#include "config.hpp"

#include <openssl/evp.h>

#include <boost/property_tree/ini_parser.hpp>
#include <cstdio>
#include <fstream>
#include <regex>
#include <cmath>
#include <sstream>

namespace sigsurf::cli {

namespace pt = boost::property_tree;

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    std::string hex;
    char buf[3];
    for (unsigned i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

namespace {

std::string unquote(std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

}  // namespace

// Number fields also accept the engineering form "1+0.5i" (digit directly
// followed by i), which the expression grammar itself rejects.
cd parse_complex(const std::string& s) {
    static const std::regex suffix(R"(([0-9.])i\b)");
    try {
        const expr::Expr e = expr::parse(std::regex_replace(unquote(s), suffix, "$1*i"));
        if (!expr::parameters(e).empty() || expr::depends_on(e, expr::Var::Xi) || expr::depends_on(e, expr::Var::XiBar))
            throw ConfigError("expected a numeric constant, got '" + s + "'");
        return expr::evaluate(e, {0.0, nullptr});
    } catch (const expr::ParseError& ex) {
        throw ConfigError("bad number '" + s + "': " + ex.what());
    } catch (const expr::EvalError& ex) {
        throw ConfigError("bad number '" + s + "': " + ex.what());
    }
}

std::vector<cd> parse_complex_list(const std::string& s) {
    std::vector<cd> out;
    std::stringstream ss(unquote(s));
    std::string item;
    while (std::getline(ss, item, ';'))
        if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_complex(item));
    return out;
}

std::string RunConfig::get(const std::string& key, const std::string& def) const {
    auto v = tree.get_optional<std::string>(key);
    return v ? unquote(*v) : def;
}

bool RunConfig::has(const std::string& key) const { return bool(tree.get_optional<std::string>(key)); }

double RunConfig::get_real(const std::string& key, double def) const {
    if (!has(key)) return def;
    const cd v = parse_complex(get(key, ""));
    if (v.imag() != 0.0) throw ConfigError(key + " must be real");
    return v.real();
}

cd RunConfig::get_complex(const std::string& key, cd def) const { return has(key) ? parse_complex(get(key, "")) : def; }

int RunConfig::get_int(const std::string& key, int def) const {
    if (!has(key)) return def;
    const double v = get_real(key, 0);
    if (v != std::floor(v)) throw ConfigError(key + " must be an integer");
    return int(v);
}

RunConfig load_config(const std::string& path, bool need_solution) {
    RunConfig c;
    c.path = path;
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    c.text = ss.str();
    c.hash = sha256_hex(c.text);
    try {
        std::istringstream is(c.text);
        pt::read_ini(is, c.tree);
    } catch (const pt::ini_parser_error& ex) {
        throw ConfigError(std::string("config: ") + ex.what());
    }

    c.out_dir = c.get("output.dir", ".");
    c.threads = unsigned(c.get_int("run.threads", 0));

    auto& t = c.tol;
    t.el = c.get_real("tolerances.el", t.el);
    if (c.has("tolerances.dc")) t.dc = c.get_real("tolerances.dc", 0);
    t.K = c.get_real("tolerances.K", t.K);
    t.relation = c.get_real("tolerances.relation", t.relation);
    t.gw = c.get_real("tolerances.gw", t.gw);
    t.frame = c.get_real("tolerances.frame", t.frame);
    t.refinement = c.get_real("tolerances.refinement", t.refinement);
    t.symmetry_slope = c.get_real("tolerances.symmetry_slope", t.symmetry_slope);
    t.invariance = c.get_real("tolerances.invariance", t.invariance);

    const bool has_inline = c.has("solution.N") || c.has("solution.w1");
    const bool has_catalog = c.has("solution.catalog");
    if (has_inline && has_catalog) throw ConfigError("give either solution.catalog or inline fields, not both");
    if (!has_inline && !has_catalog) {
        if (need_solution) throw ConfigError("config has no [solution] section");
        return c;
    }
    try {
        if (has_catalog) {
            const std::string name = c.get("solution.catalog", "");
            if (c.has("solution.catalog_file")) {
                bool found = false;
                for (auto& e : load_catalog(c.get("solution.catalog_file", "")))
                    if (e.name() == name) {
                        c.entry = e;
                        found = true;
                    }
                if (!found) throw ConfigError("no entry '" + name + "' in " + c.get("solution.catalog_file", ""));
            } else {
                c.entry = catalog_entry(name);
            }
        } else {
            const int N = c.get_int("solution.N", 0);
            if (N < 2) throw ConfigError("solution.N must be at least 2");
            std::vector<std::string> w, wb;
            for (int i = 1; i < N; ++i) {
                const std::string k = "solution.w" + std::to_string(i);
                if (!c.has(k)) throw ConfigError("missing " + k);
                w.push_back(c.get(k, ""));
                const std::string kb = "solution.wb" + std::to_string(i);
                if (c.has(kb)) wb.push_back(c.get(kb, ""));
            }
            if (!wb.empty() && int(wb.size()) != N - 1) throw ConfigError("give all or none of the wb_i");
            expr::ParamMap params;
            if (auto s = c.tree.get_child_optional("solution"))
                for (const auto& [k, v] : *s)
                    if (k.rfind("param_", 0) == 0) params[k.substr(6)] = parse_complex(v.data());
            c.entry.solution = AffineSolution::from_strings(w, wb, params, c.get("solution.name", "inline"));
            c.entry.kind = classification_from_name(c.get("solution.kind", "mixed"));
            c.entry.relation = relation_from_name(c.get("solution.relation", "none"));
            if (c.has("solution.expected_K")) c.entry.expected_K = c.get_real("solution.expected_K", 0);
        }
        if (c.has("solution.singularities")) c.entry.solution.singularities = parse_complex_list(c.get("solution.singularities", ""));
        if (c.has("solution.formal")) c.entry.solution.formal = c.get("solution.formal", "false") == "true";
    } catch (const expr::ParseError& ex) {
        throw ConfigError(std::string("expression: ") + ex.what() + " (offset " + std::to_string(ex.offset) + ")");
    } catch (const ModelError& ex) {
        throw ConfigError(ex.what());
    } catch (const CatalogError& ex) {
        throw ConfigError(ex.what());
    }

    c.grid = c.entry.grid;
    c.grid.center = c.get_complex("grid.center", c.grid.center);
    c.grid.half_width = c.get_real("grid.half_width", c.grid.half_width);
    c.grid.resolution = c.get_int("grid.resolution", c.grid.resolution);
    if (!(c.grid.half_width > 0) || c.grid.resolution < 1) throw ConfigError("grid needs half_width > 0 and resolution >= 1");
    return c;
}

}  // namespace sigsurf::cli
