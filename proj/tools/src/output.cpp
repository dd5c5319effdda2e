#include "output.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "config.hpp"

namespace sigsurf::cli {

namespace fs = std::filesystem;

namespace {
std::string now_utc() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}
}  // namespace

Output::Output(std::string dir, std::string config_hash, std::string command)
    : dir_(std::move(dir)), hash_(std::move(config_hash)), command_(std::move(command)), stamp_(now_utc()) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir_ + ": " + ec.message());
}

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json cjson(cd v) { return json::array({v.real(), v.imag()}); }

json mjson(const Eigen::MatrixXcd& m) {
    json a = json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) a.push_back(cjson(m(i, j)));
    return a;
}

std::string Output::write_csv(const std::string& file, const std::vector<std::string>& columns,
                              const std::vector<std::vector<double>>& rows) const {
    const std::string path = (fs::path(dir_) / file).string();
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write " + path);
    f << "# generated " << stamp_ << "\n";
    f << "# config_sha256 " << hash_ << "\n";
    f << "# schema sigsurf." << command_ << "/" << kSchemaVersion << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) f << (i ? "," : "") << columns[i];
    f << "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) f << (i ? "," : "") << num(r[i]);
        f << "\n";
    }
    return path;
}

std::string Output::write_json(const std::string& file, json body) const {
    const std::string path = (fs::path(dir_) / file).string();
    json doc;
    doc["generated"] = stamp_;
    doc["schema"] = "sigsurf." + command_ + "/" + kSchemaVersion;
    doc["config_sha256"] = hash_;
    for (auto& [k, v] : body.items()) doc[k] = v;
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write " + path);
    // NaN is not JSON; nlohmann writes null for it, which the schema allows
    f << doc.dump(2) << "\n";
    return path;
}

}  // namespace sigsurf::cli
