#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "config.hpp"

namespace fs = std::filesystem;
using namespace sigsurf::cli;

namespace {

const fs::path kSrc = SIGSURF_SOURCE_DIR;

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("sigsurf_cli_test_" + std::to_string(::getpid())) / name;
    fs::create_directories(p);
    return p;
}

int run(const std::string& args) {
    const std::string cmd = std::string(SIGSURF_CLI) + " " + args + " > /dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

std::string without_stamp(const fs::path& p) {
    std::istringstream in(slurp(p));
    std::string line, out;
    while (std::getline(in, line))
        if (line.rfind("# generated ", 0) != 0 && line.find("\"generated\":") == std::string::npos) out += line + "\n";
    return out;
}

fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = scratch("cfg") / name;
    std::ofstream(p) << text;
    return p;
}

std::string cfg(const char* name) { return (kSrc / "configs" / name).string(); }

}  // namespace

TEST_CASE("config: numbers, hash and validation") {
    CHECK(parse_complex("1+0.5i") == sigsurf::cd(1, 0.5));
    CHECK(parse_complex("\"2*i\"") == sigsurf::cd(0, 2));
    CHECK(parse_complex_list("0; 1+i ;-2").size() == 3);
    CHECK_THROWS_AS(parse_complex("xi"), ConfigError);
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

    const RunConfig c = load_config(cfg("special_geom.ini"));
    CHECK(c.entry.N() == 3);
    CHECK(c.grid.resolution == 41);
    CHECK(c.entry.expected_K == 2.0);
    CHECK(c.hash == sha256_hex(slurp(cfg("special_geom.ini"))));

    CHECK_THROWS_AS(load_config(write_config("a.ini", "[solution]\nN = 3\nw1 = \"xi\"\n").string()), ConfigError);
    CHECK_THROWS_AS(load_config(write_config("b.ini", "[solution]\nN = 2\nw1 = \"2xi\"\n").string()), ConfigError);
    CHECK_THROWS_AS(load_config(write_config("c.ini", "[solution]\ncatalog = soliton\nN = 3\n").string()), ConfigError);
    CHECK_THROWS_AS(load_config(write_config("d.ini", "[solution]\ncatalog = nope\n").string()), ConfigError);
    CHECK_THROWS_AS(load_config(write_config("e.ini", "[solution]\ncatalog = soliton\n[grid]\nresolution = 0\n").string()),
                    ConfigError);
}

TEST_CASE("exit codes") {
    const std::string out = scratch("codes").string();
    CHECK(run("check " + cfg("soliton_check.ini") + " -o " + out) == 0);
    CHECK(run("check " + cfg("broken_check.ini") + " -o " + out) == 1);
    CHECK(run("check " + write_config("bad.ini", "this is not ini").string()) == 2);
    CHECK(run("check " + write_config("bad2.ini", "[solution]\nN = 2\nw1 = \"xi+\"\n").string()) == 2);
    CHECK(run("frame " + cfg("soliton_check.ini") + " -o " + out) == 2);  // needs holomorphic N = 3
    CHECK(run("check /nonexistent.ini") == 2);
    CHECK(run("") == 2);
    CHECK(run("catalog list") == 0);
    const auto broken = slurp(fs::path(out) / "check.json");
    CHECK(broken.find("\"el_residual\"") != std::string::npos);
}

TEST_CASE("geom output: schema lines, K column, hash") {
    const fs::path out = scratch("geom");
    REQUIRE(run("geom " + cfg("special_geom.ini") + " -o " + out.string()) == 0);
    std::istringstream in(slurp(out / "geom.csv"));
    std::string l1, l2, l3, header;
    std::getline(in, l1);
    std::getline(in, l2);
    std::getline(in, l3);
    std::getline(in, header);
    CHECK(l1.rfind("# generated ", 0) == 0);
    CHECK(l2 == "# config_sha256 " + sha256_hex(slurp(cfg("special_geom.ini"))));
    CHECK(l3 == "# schema sigsurf.geom/1");
    CHECK(header == "xi1,xi2,q,ReJ,ImJ,K,H_norm,det_g");
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        double v[8];
        char c;
        std::istringstream r(line);
        for (int k = 0; k < 8; ++k) r >> v[k] >> c;
        CHECK(std::abs(v[5] - 2.0) < 1e-8);
        ++rows;
    }
    CHECK(rows == 41 * 41);
}

TEST_CASE("immerse, frame, charge, willmore, symmetry configs pass") {
    const std::string out = scratch("all").string();
    CHECK(run("immerse " + cfg("cp1_immerse.ini") + " -o " + out) == 0);
    CHECK(run("frame " + cfg("special_frame.ini") + " -o " + out) == 0);
    CHECK(run("willmore " + cfg("willmore_special.ini") + " -o " + out) == 0);
    CHECK(run("symmetry " + cfg("symmetry_soliton.ini") + " -o " + out) == 0);
    CHECK(run("symmetry " + cfg("symmetry_negative.ini") + " -o " + out) == 0);
    CHECK(run("symmetry " + cfg("su2_soliton.ini") + " -o " + out) == 0);
    CHECK(run("catalog verify -o " + out) == 0);
    const fs::path cat = fs::path(out) / "cat.ini";
    CHECK(run("catalog export " + cat.string()) == 0);
    CHECK(run("catalog -f " + cat.string() + " verify -n soliton -o " + out) == 0);
}

TEST_CASE("repeated runs are identical apart from the timestamp") {
    const fs::path a = scratch("rep_a"), b = scratch("rep_b");
    for (const auto& [cmd, file, out] : {std::tuple{"geom", "special_geom.ini", "geom.csv"},
                                         std::tuple{"frame", "special_frame.ini", "frame.json"},
                                         std::tuple{"symmetry", "symmetry_soliton.ini", "symmetry.json"}}) {
        REQUIRE(run(std::string(cmd) + " " + cfg(file) + " -o " + a.string()) == 0);
        REQUIRE(run(std::string(cmd) + " " + cfg(file) + " -o " + b.string()) == 0);
        CHECK(without_stamp(a / out) == without_stamp(b / out));
        CHECK(slurp(a / out) != "");
    }
}
