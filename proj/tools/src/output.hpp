#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include <sigsurf/model.hpp>

namespace sigsurf::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

// Every file starts with a timestamp line; everything after it is a pure
// function of the config.
class Output {
public:
    Output(std::string dir, std::string config_hash, std::string command);

    const std::string& hash() const { return hash_; }

    // CSV: "# generated <ts>", "# config_sha256 <hash>", "# schema sigsurf.<cmd>/<v>", header, rows.
    std::string write_csv(const std::string& file, const std::vector<std::string>& columns,
                          const std::vector<std::vector<double>>& rows) const;
    // JSON object; "generated" is the first key (first line after '{').
    std::string write_json(const std::string& file, json body) const;

private:
    std::string dir_, hash_, command_, stamp_;
};

std::string num(double v);     // %.17g, "nan" / "inf" spelled out
json cjson(cd v);               // [re, im]
json mjson(const Eigen::MatrixXcd& m);  // row-major [[re, im], ...]

}  // namespace sigsurf::cli
