#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kBin = fs::path(CRV_BINARY_DIR) / "crv";
const fs::path kWork = fs::temp_directory_path() / "crv_cli_test";

int run(const std::string& args) {
    std::string cmd = kBin.string() + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

void write_file(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path());
    std::ofstream f(p);
    f << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("tables: exit 0, report artifact, deterministic output") {
    fs::remove_all(kWork);
    write_file(kWork / "cfg", "truncation_order = 4\nout_dir = " + (kWork / "o1").string() + "\n");
    CHECK(run("tables -c " + (kWork / "cfg").string()) == 0);
    auto j = nlohmann::ordered_json::parse(slurp(kWork / "o1" / "report.json"));
    CHECK(j.at("passed").get<bool>());
    std::string tables = slurp(kWork / "o1" / "tables.txt");
    CHECK(tables.find("DIFFERS") != std::string::npos);  // the known discrepant row
    CHECK(tables.find("match") != std::string::npos);

    CHECK(run("tables -c " + (kWork / "cfg").string() + " -o " + (kWork / "o2").string()) == 0);
    CHECK(slurp(kWork / "o1" / "report.json") == slurp(kWork / "o2" / "report.json"));
}

TEST_CASE("gbc-verify: passes at full order, refuses short truncation") {
    write_file(kWork / "cfg_gbc", "out_dir = " + (kWork / "g1").string() + "\n");
    CHECK(run("gbc-verify -c " + (kWork / "cfg_gbc").string()) == 0);
    auto j = nlohmann::ordered_json::parse(slurp(kWork / "g1" / "report.json"));
    CHECK(j.at("passed").get<bool>());
    CHECK(j.at("artifacts").contains("euler_constant"));
    CHECK(j.at("artifacts").at("euler_constant") == j.at("artifacts").at("euler_constant_expected"));

    write_file(kWork / "cfg_short", "truncation_order = 3\n");
    CHECK(run("gbc-verify -c " + (kWork / "cfg_short").string()) == 2);
}

TEST_CASE("volume: flat quotient and the model boundary") {
    write_file(kWork / "cfg_heis",
               "manifold = heisenberg\nheis_grid = 10\nout_dir = " + (kWork / "vh").string() + "\n");
    CHECK(run("volume -c " + (kWork / "cfg_heis").string()) == 0);
    std::string csv = slurp(kWork / "vh" / "volume.csv");
    CHECK(csv.find("n/a") != std::string::npos);
    CHECK(fs::exists(kWork / "vh" / "nodes.csv"));

    write_file(kWork / "cfg_s3",
               "manifold = s3\nn_radial = 10\nn_angle = 10\nout_dir = " + (kWork / "vs").string() + "\n");
    CHECK(run("volume -c " + (kWork / "cfg_s3").string()) == 0);
    auto j = nlohmann::ordered_json::parse(slurp(kWork / "vs" / "report.json"));
    CHECK(j.at("passed").get<bool>());
    std::string csv2 = slurp(kWork / "vs" / "volume.csv");
    CHECK(csv2.find("n/a") == std::string::npos);  // model values are filled in
}

TEST_CASE("anomaly and stokes subcommands pass on small grids") {
    write_file(kWork / "cfg_an",
               "manifold = heisenberg\nheis_grid = 12\nseed = 5\nout_dir = " +
                   (kWork / "an").string() + "\n");
    CHECK(run("anomaly -c " + (kWork / "cfg_an").string()) == 0);
    CHECK(fs::exists(kWork / "an" / "summary.json"));
    CHECK(fs::exists(kWork / "an" / "errors.csv"));

    write_file(kWork / "cfg_st",
               "manifold = s3\nn_radial = 8\nn_angle = 8\nseed = 3\nout_dir = " +
                   (kWork / "st").string() + "\n");
    CHECK(run("stokes -c " + (kWork / "cfg_st").string()) == 0);
    CHECK(fs::exists(kWork / "st" / "stokes.csv"));
}

TEST_CASE("configuration errors exit with code 2") {
    write_file(kWork / "bad1", "unknown_key = 3\n");
    CHECK(run("tables -c " + (kWork / "bad1").string()) == 2);
    write_file(kWork / "bad2", "manifold = torus\n");
    CHECK(run("tables -c " + (kWork / "bad2").string()) == 2);
    write_file(kWork / "bad3", "tol_stokes = -1\n");
    CHECK(run("stokes -c " + (kWork / "bad3").string()) == 2);
    CHECK(run("volume -c " + (kWork / "missing_file").string()) == 2);
    CHECK(run("") == 2);  // a subcommand is required
}
