#include <CLI11.hpp>

#include <functional>
#include <iostream>

#include <sigsurf/geometry.hpp>
#include <sigsurf/immersion.hpp>
#include <sigsurf/quadrature.hpp>
#include <sigsurf/su3frame.hpp>
#include <sigsurf/symmetry.hpp>

#include "commands.hpp"

using namespace sigsurf;
using namespace sigsurf::cli;

int main(int argc, char** argv) {
    CLI::App app{"sigsurf: surfaces immersed in su(N) from CP^(N-1) sigma model solutions"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::function<int(const RunConfig&)> run;

    auto add = [&](const char* name, const char* help, int (*fn)(const RunConfig&)) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("config", config_path, "INI run configuration")->required()->check(CLI::ExistingFile);
        sub->add_option("-o,--out", out_dir, "output directory (overrides [output] dir)");
        sub->callback([&run, fn] { run = fn; });
    };
    add("check", "EL, differential-constraint and holomorphy residuals over the grid", cmd_check);
    add("geom", "metric, Gaussian and mean curvature over the grid (CSV)", cmd_geom);
    add("immerse", "surface coordinates over the grid (CSV)", cmd_immerse);
    add("frame", "SU(3) moving frame and Gauss-Weingarten residuals (JSON)", cmd_frame);
    add("charge", "topological charge with refinement levels (JSON)", cmd_charge);
    add("willmore", "Willmore functional over the grid region (JSON)", cmd_willmore);
    add("symmetry", "generator slopes or group actions with residual report (JSON)", cmd_symmetry);

    CatalogOptions copt;
    std::function<int(const CatalogOptions&)> run_cat;
    auto* cat = app.add_subcommand("catalog", "builtin or file-based solution catalog");
    cat->require_subcommand(1);
    cat->add_option("-f,--file", copt.file, "catalog INI file instead of the builtin entries");
    auto* list = cat->add_subcommand("list", "list entries");
    list->callback([&] { run_cat = cmd_catalog_list; });
    auto* verify = cat->add_subcommand("verify", "re-validate entries (JSON report)");
    verify->add_option("-n,--name", copt.name, "verify a single entry");
    verify->add_option("-o,--out", copt.out_dir, "output directory");
    verify->callback([&] { run_cat = cmd_catalog_verify; });
    auto* exp = cat->add_subcommand("export", "write entries as INI");
    exp->add_option("path", copt.export_path, "destination file")->required();
    exp->callback([&] { run_cat = cmd_catalog_export; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (run_cat) return run_cat(copt);
        RunConfig cfg = load_config(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        return run(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "sigsurf: config error: " << e.what() << "\n";
        return kUsage;
    } catch (const expr::ParseError& e) {
        std::cerr << "sigsurf: expression error at offset " << e.offset << ": " << e.what() << "\n";
        return kUsage;
    } catch (const expr::EvalError& e) {
        std::cerr << "sigsurf: evaluation failed in '" << e.subexpr << "': " << e.what() << "\n";
        return kFail;
    } catch (const std::exception& e) {
        // ModelError, GeometryError, ImmersionError, FrameError, QuadratureError, ...
        std::cerr << "sigsurf: " << e.what() << "\n";
        return kFail;
    }
}
