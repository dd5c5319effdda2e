#pragma once

#include <boost/property_tree/ptree.hpp>
#include <optional>
#include <stdexcept>
#include <string>

#include <sigsurf/grid.hpp>
#include <sigsurf/solutions.hpp>

namespace sigsurf::cli {

// Anything wrong with the input itself: exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Tolerances {
    double el = 1e-9;
    std::optional<double> dc;        // enforced only when given
    double K = 1e-8;
    double relation = 1e-10;
    double gw = 1e-7;
    double frame = 1e-10;
    double refinement = 1e-5;        // charge / Willmore successive-level change
    double symmetry_slope = 0.1;
    double invariance = 1e-9;
};

struct RunConfig {
    std::string path;
    std::string text;          // raw bytes, hashed
    std::string hash;          // SHA-256 hex of text
    boost::property_tree::ptree tree;

    CatalogEntry entry;        // solution plus declared metadata
    GridSpec grid;
    Tolerances tol;
    std::string out_dir = ".";
    unsigned threads = 0;

    // typed lookups with config-error reporting
    std::string get(const std::string& key, const std::string& def) const;
    double get_real(const std::string& key, double def) const;
    cd get_complex(const std::string& key, cd def) const;
    int get_int(const std::string& key, int def) const;
    bool has(const std::string& key) const;
};

std::string sha256_hex(const std::string& data);
cd parse_complex(const std::string& s);
std::vector<cd> parse_complex_list(const std::string& s);

// Reads and validates a config file. `need_solution` = false for subcommands
// that can run without one (catalog).
RunConfig load_config(const std::string& path, bool need_solution = true);

}  // namespace sigsurf::cli
