#pragma once

#include <string>

#include "config.hpp"

namespace sigsurf::cli {

enum ExitCode { kOk = 0, kFail = 1, kUsage = 2 };

int cmd_check(const RunConfig& c);
int cmd_geom(const RunConfig& c);
int cmd_immerse(const RunConfig& c);
int cmd_frame(const RunConfig& c);
int cmd_charge(const RunConfig& c);
int cmd_willmore(const RunConfig& c);
int cmd_symmetry(const RunConfig& c);

struct CatalogOptions {
    std::string file;        // empty: builtin entries
    std::string name;        // verify one entry only
    std::string out_dir = ".";
    std::string export_path;
};
int cmd_catalog_list(const CatalogOptions& o);
int cmd_catalog_verify(const CatalogOptions& o);
int cmd_catalog_export(const CatalogOptions& o);

}  // namespace sigsurf::cli
