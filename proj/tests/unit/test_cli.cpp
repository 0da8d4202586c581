// test_cli.cpp — Command-line driver: precedence, rerun, sweeps, exit codes

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "corepol/output.hpp"
#include "run.hpp"

namespace fs = std::filesystem;
using namespace corepol;
using namespace corepol::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = main_entry(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

Metadata header_of(const std::string& csv) {
    std::istringstream is(csv);
    return read_metadata_header(is);
}

std::string meta(const std::string& csv, const std::string& key) {
    const auto m = header_of(csv);
    const auto* v = m.find(key);
    REQUIRE_MESSAGE(v != nullptr, "missing key " << key);
    return *v;
}

fs::path scratch_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("corepol_cli_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

// Model with a cavity table but no lineshape table.
const char* kSmallModel = R"(
[model]
name = "small"

[[state]]
id = "g"
manifold = "G"
energy_ev = 0.0

[[state]]
id = "a"
manifold = "E"
energy_ev = 286.0
site = "A"

[[state]]
id = "b"
manifold = "E"
energy_ev = 290.0
site = "B"

[[state]]
id = "ab"
manifold = "F"
energy_ev = 576.0
constituents = ["a", "b"]

[[dipole]]
from = "g"
to = "a"
value_debye = 0.1

[[dipole]]
from = "g"
to = "b"
value_debye = 0.08

[[dipole]]
from = "a"
to = "ab"
value_debye = 0.08

[[dipole]]
from = "b"
to = "ab"
value_debye = 0.1

[cavity]
omega_c_ev = 291.0
g_ev_per_debye = 0.5
)";

fs::path small_model_file() {
    const fs::path p = scratch_dir("model") / "small.toml";
    std::ofstream(p) << kSmallModel;
    return p;
}

}  // namespace

TEST_CASE("flag beats file beats built-in default") {
    const auto model = small_model_file().string();
    const auto r = invoke({"xanes", "--model", model, "--g", "1.25", "--points", "11", "-o", "-"});
    REQUIRE(r.code == 0);
    CHECK(meta(r.out, "g_ev_per_debye") == "1.25");        // flag
    CHECK(meta(r.out, "omega_c_ev") == "291");             // file
    CHECK(meta(r.out, "gamma_e_ev") == "0.20000000000000001");   // built-in
    CHECK(meta(r.out, "gamma_f_ev") == "0.40000000000000002");
    CHECK(meta(r.out, "grid_points") == "11");
    CHECK(meta(r.out, "grid_min_ev") == "280");
    CHECK(meta(r.out, "model_file") == model);
    CHECK(meta(r.out, "command") == "xanes");
}

TEST_CASE("bundled model is the default and matches the data file") {
    std::ifstream f(std::string(COREPOL_DATA_DIR) + "/difluoroethylene.toml", std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    CHECK(bundled_model_text() == s.str());
    const auto r = invoke({"xanes", "--points", "11", "-o", "-"});
    REQUIRE(r.code == 0);
    CHECK(meta(r.out, "model_file") == kBundledModel);
    CHECK(meta(r.out, "model") == "1,1-difluoroethylene");
}

TEST_CASE("header carries no timestamp or output path") {
    const auto dir = scratch_dir("header");
    const auto path = (dir / "x.csv").string();
    REQUIRE(invoke({"xanes", "--points", "11", "-o", path}).code == 0);
    const auto text = slurp(path);
    CHECK(text.find(path) == std::string::npos);
    CHECK(text.find("time") == std::string::npos);
    CHECK(text.find("date") == std::string::npos);
}

TEST_CASE("rerun reproduces the file byte for byte") {
    const auto dir = scratch_dir("rerun");
    const auto model = small_model_file().string();
    const std::vector<std::vector<std::string>> runs{
        {"xanes", "--g", "0.7", "--raw", "--grid-min", "283.5", "--points", "301"},
        {"tpa", "--model", model, "--points", "201"},
        {"decompose", "--g", "2.45", "--n-molecules", "3"},
        {"pe", "--g", "0.3", "--axis1-points", "33", "--axis2-points", "29", "--delay", "1.5"},
        {"dqc21", "--axis1-points", "21", "--axis2-points", "23", "--filter-bandwidth", "15"},
        {"dqc32", "--model", model, "--axis1-points", "17", "--axis2-points", "19", "--gamma-f", "0.3"},
    };
    int k = 0;
    for (auto args : runs) {
        for (const std::string fmt : {"csv", "json"}) {
            const auto first = (dir / ("a" + std::to_string(k) + "." + fmt)).string();
            const auto second = (dir / ("b" + std::to_string(k) + "." + fmt)).string();
            ++k;
            auto full = args;
            full.insert(full.end(), {"--format", fmt, "-o", first});
            CAPTURE(full[0]);
            CAPTURE(fmt);
            REQUIRE(invoke(full).code == 0);
            const auto r = invoke({"rerun", first, "-o", second});
            REQUIRE_MESSAGE(r.code == 0, r.err);
            CHECK(slurp(first) == slurp(second));
        }
    }
}

TEST_CASE("rerun refuses a file without a recorded configuration") {
    const auto dir = scratch_dir("rerun_bad");
    std::ofstream(dir / "x.csv") << "# command: xanes\nomega_ev,intensity\n";
    CHECK(invoke({"rerun", (dir / "x.csv").string()}).code == kExitUsage);
    CHECK(invoke({"rerun", (dir / "missing.csv").string()}).code == kExitUsage);
}

TEST_CASE("sweep writes one file per value with exact endpoints") {
    const auto dir = scratch_dir("sweep");
    const auto r = invoke({"sweep", "--param", "g", "--from", "0", "--to", "1.2", "--steps", "13", "--command", "xanes",
                        "--points", "101", "--output-dir", dir.string()});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(dir)) names.push_back(e.path().filename().string());
    CHECK(names.size() == 13);
    REQUIRE(fs::exists(dir / "out_g_0.csv"));
    REQUIRE(fs::exists(dir / "out_g_0.5.csv"));
    REQUIRE(fs::exists(dir / "out_g_1.2.csv"));
    CHECK(meta(slurp(dir / "out_g_1.2.csv"), "g_ev_per_debye") == "1.2");
    CHECK(meta(slurp(dir / "out_g_0.csv"), "g_ev_per_debye") == "0");
    CHECK(meta(slurp(dir / "out_g_0.5.csv"), "command") == "xanes");

    // Each sweep file is itself re-executable.
    const auto again = invoke({"rerun", (dir / "out_g_0.5.csv").string()});
    REQUIRE(again.code == 0);
    CHECK(again.out == slurp(dir / "out_g_0.5.csv"));
}

TEST_CASE("parallel and serial sweeps agree") {
    const auto serial = scratch_dir("sweep_serial");
    const auto parallel = scratch_dir("sweep_parallel");
    const std::vector<std::string> base{"sweep", "--param", "omega-c", "--from", "286", "--to", "292", "--steps", "4",
                                        "--command", "pe", "--axis1-points", "24", "--axis2-points", "24"};
    auto a = base;
    a.insert(a.end(), {"--output-dir", serial.string()});
    auto b = base;
    b.insert(b.end(), {"--output-dir", parallel.string(), "--parallel"});
    REQUIRE(invoke(a).code == 0);
    REQUIRE(invoke(b).code == 0);
    for (const auto* name : {"out_omega-c_286.csv", "out_omega-c_288.csv", "out_omega-c_290.csv", "out_omega-c_292.csv"})
        CHECK(slurp(serial / name) == slurp(parallel / name));
}

TEST_CASE("sweep usage errors") {
    const auto dir = scratch_dir("sweep_bad").string();
    CHECK(invoke({"sweep", "--param", "g", "--from", "1", "--to", "1.0000001", "--steps", "3", "--command", "xanes",
               "--output-dir", dir})
              .code == kExitUsage);
    CHECK(invoke({"sweep", "--param", "n", "--from", "1", "--to", "2", "--steps", "2", "--command", "xanes",
               "--output-dir", dir})
              .code == kExitUsage);
    CHECK(invoke({"sweep", "--param", "g", "--from", "1", "--to", "2", "--steps", "2", "--command", "nope",
               "--output-dir", dir})
              .code == kExitUsage);
    CHECK(invoke({"sweep", "--param", "g", "--from", "1", "--to", "2", "--steps", "0", "--command", "xanes",
               "--output-dir", dir})
              .code == kExitUsage);
    CHECK(fs::is_empty(dir));
}

TEST_CASE("exit codes") {
    SUBCASE("usage") {
        CHECK(invoke({}).code == kExitUsage);
        CHECK(invoke({"xanes", "--no-such-flag"}).code == kExitUsage);
        CHECK(invoke({"xanes", "--format", "xml"}).code == kExitUsage);
        CHECK(invoke({"xanes", "--points", "1", "-o", "-"}).code == kExitUsage);
        CHECK(invoke({"xanes", "-o", "/proc/nonexistent/dir/x.csv"}).code == kExitUsage);
    }
    SUBCASE("model") {
        CHECK(invoke({"xanes", "--model", "/nonexistent/model.toml", "-o", "-"}).code == kExitModel);
        CHECK(invoke({"xanes", "--gamma-e", "-0.1", "-o", "-"}).code == kExitModel);
        CHECK(invoke({"xanes", "--g", "-1", "-o", "-"}).code == kExitModel);
        CHECK(invoke({"pe", "--n-max", "1", "-o", "-"}).code == kExitModel);
        CHECK(invoke({"xanes", "--n-molecules", "0", "-o", "-"}).code == kExitModel);
        const auto r = invoke({"xanes", "--gamma-e", "0", "-o", "-"});
        CHECK(r.code == kExitModel);
        CHECK(r.out.empty());
        CHECK_FALSE(r.err.empty());
    }
    SUBCASE("numerical") {
        CHECK(invoke({"pe", "--max-block-dim", "4", "-o", "-"}).code == kExitNumerical);
        CHECK(invoke({"xanes", "--n-molecules", "200", "--max-block-dim", "100", "-o", "-"}).code == kExitNumerical);
    }
    SUBCASE("help and version") {
        const auto v = invoke({"--version"});
        CHECK(v.code == 0);
        CHECK(v.out.find("corepol 0.1.0") != std::string::npos);
        CHECK(v.out.find("model schema 1") != std::string::npos);
        CHECK(invoke({"--help"}).code == 0);
    }
}

TEST_CASE("default output name honours the output directory variable") {
    const auto dir = scratch_dir("env");
    ::setenv(kOutputDirEnv, dir.string().c_str(), 1);
    const auto r = invoke({"tpa", "--points", "21", "--format", "json"});
    ::unsetenv(kOutputDirEnv);
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "tpa.json"));
}

TEST_CASE("runs are deterministic") {
    const std::vector<std::string> args{"dqc32", "--g", "1.1", "--axis1-points", "40", "--axis2-points", "40", "-o", "-"};
    const auto a = invoke(args);
    const auto b = invoke(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("JSON output carries metadata and data arrays") {
    const auto x = invoke({"xanes", "--points", "51", "--format", "json", "-o", "-"});
    REQUIRE(x.code == 0);
    const auto jx = nlohmann::json::parse(x.out);
    CHECK(jx.at("metadata").at("command") == "xanes");
    CHECK(jx.at("metadata").at("format") == "json");
    CHECK(jx.at("axis").size() == 51);
    CHECK(jx.at("values").size() == 51);

    const auto p = invoke({"pe", "--axis1-points", "8", "--axis2-points", "6", "--format", "json", "-o", "-"});
    REQUIRE(p.code == 0);
    const auto jp = nlohmann::json::parse(p.out);
    CHECK(jp.at("axis1").size() == 8);
    CHECK(jp.at("axis2").size() == 6);
    CHECK(jp.at("metadata").at("delay_hbar_per_ev") == "0");

    const auto d = invoke({"decompose", "--g", "2.45", "--format", "json", "-o", "-"});
    REQUIRE(d.code == 0);
    const auto jd = nlohmann::json::parse(d.out);
    CHECK(jd.at("tags") == nlohmann::json({"CH2", "CF2", "PHOTON"}));
    CHECK(jd.at("states").size() == 6);
}

TEST_CASE("dqc21 map of the bundled model peaks at the lowest quartet point") {
    const auto r = invoke({"dqc21", "-o", "-"});
    REQUIRE(r.code == 0);
    CHECK(meta(r.out, "axis1_points") == "512");
    std::istringstream is(r.out);
    std::string line;
    double best = -1.0, w1 = 0.0, w2 = 0.0;
    bool data = false;
    while (std::getline(is, line)) {
        if (line.rfind("axis1_ev", 0) == 0) {
            data = true;
            continue;
        }
        if (!data || line.empty()) continue;
        std::istringstream ls(line);
        std::string a, b, re, im, ab;
        std::getline(ls, a, ',');
        std::getline(ls, b, ',');
        std::getline(ls, re, ',');
        std::getline(ls, im, ',');
        std::getline(ls, ab, ',');
        if (std::stod(ab) > best) {
            best = std::stod(ab);
            w1 = std::stod(a);
            w2 = std::stod(b);
        }
    }
    const double d1 = 18.0 / 511.0, d2 = 36.0 / 511.0;
    CHECK(std::abs(w1 - 285.6) <= d1);
    CHECK(std::abs(w2 - 573.9) <= d2);
}

TEST_CASE("the installed executable runs end to end") {
    const auto dir = scratch_dir("exe");
    const std::string exe = COREPOL_EXE;
    const auto out = (dir / "x.csv").string();
    REQUIRE(std::system((exe + " --version > " + (dir / "v.txt").string()).c_str()) == 0);
    CHECK(slurp(dir / "v.txt").find("corepol 0.1.0") != std::string::npos);
    REQUIRE(std::system((exe + " xanes --points 41 -o " + out).c_str()) == 0);
    CHECK(meta(slurp(out), "grid_points") == "41");
    const int status = std::system((exe + " xanes --gamma-e -1 -o - 2> " + (dir / "e.txt").string()).c_str());
    CHECK(WEXITSTATUS(status) == kExitModel);
}
