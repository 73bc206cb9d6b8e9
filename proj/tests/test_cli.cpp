#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string dir = (fs::temp_directory_path() / "screwon_cli_out").string();
    const std::string cmd = std::string(SCREWON_LAB_BIN) + " " + args + " > " + dir +
                            "/stdout.txt 2>&1";
    fs::create_directories(dir);
    const int rc = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WEXITSTATUS(rc);
    std::ifstream f(dir + "/stdout.txt");
    std::ostringstream os;
    os << f.rdbuf();
    res.output = os.str();
    return res;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
}

}  // namespace

TEST_CASE("simulate: bounded run produces trajectory and drift report") {
    const auto dir = fresh_dir("screwon_sim");
    const std::string cfg = std::string(SCREWON_CONFIG_DIR) + "/simulate_default.cfg";
    const auto res = run("simulate --config " + cfg + " --out " + dir.string() + " --check-lax");
    CHECK(res.exit_code == 0);
    CHECK(fs::exists(dir / "trajectory.csv"));
    const json drift = json::parse(slurp(dir / "drift.json"));
    CHECK(drift["within_bounds"].get<bool>());
    CHECK(drift["drift"]["c"].get<double>() < 1e-7);
    CHECK(drift["lax_residual"].get<double>() < 1e-6);
}

TEST_CASE("simulate: a static start yields constant columns and zero drift") {
    const auto dir = fresh_dir("screwon_sim_static");
    write(dir / "cfg.ini",
          "[model]\nk = 1\nlambda = 1\n[initial]\nL3 = -1\nS3 = 0.5\n"
          "[integrate]\nt_end = 5\ntol = 1e-10\nsamples = 50\n");
    const auto res = run("simulate --config " + (dir / "cfg.ini").string() + " --out " +
                         dir.string());
    CHECK(res.exit_code == 0);
    const json drift = json::parse(slurp(dir / "drift.json"));
    for (const char* key : {"c", "m", "s", "h", "E"})
        CHECK(drift["drift"][key].get<double>() == 0.0);
    // all state rows identical
    std::istringstream csv(slurp(dir / "trajectory.csv"));
    std::string header, first, line;
    std::getline(csv, header);
    std::getline(csv, first);
    const std::string tail = first.substr(first.find(','));
    int rows = 1;
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        CHECK(line.substr(line.find(',')) == tail);
        ++rows;
    }
    CHECK(rows == 51);
}

TEST_CASE("simulate: drift bound violation exits 2") {
    const auto dir = fresh_dir("screwon_sim_viol");
    write(dir / "cfg.ini",
          "[model]\nk = 1\nlambda = 1\n[initial]\nL1 = 0.4\nL2 = -0.3\nL3 = 0.8\n"
          "S1 = 0.9\nS2 = 0.2\nS3 = -0.5\n"
          "[integrate]\nt_end = 50\ntol = 1e-4\nsamples = 100\nmax_drift = 1e-12\n");
    const auto res = run("simulate --config " + (dir / "cfg.ini").string() + " --out " +
                         dir.string());
    CHECK(res.exit_code == 2);
}

TEST_CASE("classify: figure fixture regression reproduces all twelve tags") {
    const auto dir = fresh_dir("screwon_cls");
    const std::string cfg = std::string(SCREWON_CONFIG_DIR) + "/fig_levelsets.cfg";
    const auto res = run("classify --config " + cfg + " --out " + dir.string());
    CHECK(res.exit_code == 0);
    std::istringstream lines(slurp(dir / "levelsets.jsonl"));
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        const json rec = json::parse(line);
        CHECK(rec["match"].get<bool>());
        ++count;
    }
    CHECK(count == 12);
}

TEST_CASE("classify: byte-identical output across runs and worker counts") {
    const auto dir1 = fresh_dir("screwon_det1");
    const auto dir2 = fresh_dir("screwon_det2");
    write(dir1 / "cfg.ini", "[model]\nk = 1\nlambda = 1\n[grid]\nc = -1:3:41\nm = 0.5\n"
                            "s = 1\nh = -0.5,0,0.5\n");
    fs::copy_file(dir1 / "cfg.ini", dir2 / "cfg.ini");
    const auto r1 = run("classify --config " + (dir1 / "cfg.ini").string() + " --out " +
                        dir1.string() + " --workers 1");
    const auto r2 = run("classify --config " + (dir2 / "cfg.ini").string() + " --out " +
                        dir2.string() + " --workers 4");
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    CHECK(slurp(dir1 / "levelsets.jsonl") == slurp(dir2 / "levelsets.jsonl"));
}

TEST_CASE("classify: a 10^4-point sweep stays within the time budget") {
    const auto dir = fresh_dir("screwon_cls_sweep");
    write(dir / "cfg.ini",
          "[model]\nk = 1\nlambda = 1\n[grid]\nc = -2:3:10\nm = -2:2:10\n"
          "s = 0.1:2:10\nh = -2:2:10\n");
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = run("classify --config " + (dir / "cfg.ini").string() + " --out " +
                         dir.string() + " --workers 1");
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(res.exit_code == 0);
    CHECK(dt < 10.0);
    std::istringstream lines(slurp(dir / "levelsets.jsonl"));
    int count = 0;
    std::string line;
    while (std::getline(lines, line))
        if (!line.empty()) ++count;
    CHECK(count == 10000);
}

TEST_CASE("classify: empty-region tuple reports Empty") {
    const auto dir = fresh_dir("screwon_cls_empty");
    write(dir / "cfg.ini", "[model]\nk = 1\nlambda = 1\n[points]\np0 = -5 0 1 0 Empty\n");
    const auto res = run("classify --config " + (dir / "cfg.ini").string() + " --out " +
                         dir.string());
    CHECK(res.exit_code == 0);
}

TEST_CASE("spectrum: weak-coupling ladder") {
    const auto dir = fresh_dir("screwon_spec");
    const std::string cfg = std::string(SCREWON_CONFIG_DIR) + "/spectrum_weak.cfg";
    const auto res = run("spectrum --config " + cfg + " --out " + dir.string());
    CHECK(res.exit_code == 0);
    const json j = json::parse(slurp(dir / "spectrum.json"));
    const auto eig = j["eigenvalues"];
    REQUIRE(eig.size() == 5);
    for (int n = 0; n < 5; ++n)
        CHECK(std::abs(eig[n].get<double>() - 4.0 * (n + 0.5)) < 1e-7);
}

TEST_CASE("spectrum: weak-coupling dispersion sweep") {
    const auto dir = fresh_dir("screwon_spec_disp");
    write(dir / "cfg.ini",
          "[problem]\nmode = dimensionless\nlambda_t = 0\nl = 0\nlevels = 1\ngrid = 1500\n"
          "[sweep]\nk = 1,2\n");
    const auto res = run("spectrum --config " + (dir / "cfg.ini").string() + " --out " +
                         dir.string());
    CHECK(res.exit_code == 0);
    std::istringstream csv(slurp(dir / "dispersion.csv"));
    std::string header, line;
    std::getline(csv, header);
    std::vector<std::pair<double, double>> rows;
    while (std::getline(csv, line)) {
        if (line.size() < 3) continue;
        const auto comma = line.find(',');
        rows.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    }
    REQUIRE(rows.size() == 2);
    // E = k^2 m^2/2 + (2n + |l| + 1) hbar |k| / sqrt(mu) at weak coupling
    for (const auto& [k, E] : rows)
        CHECK(std::abs(E - (0.5 * k * k + k)) < 1e-6 * (1.0 + E));
}

TEST_CASE("spectrum: strong-coupling k sweep is flat") {
    const auto dir = fresh_dir("screwon_spec_strong");
    write(dir / "cfg.ini",
          "[problem]\nmode = strong\ng_t = 1\nl = 0\nlevels = 1\ngrid = 2000\n"
          "[sweep]\nk = 0.5,1,2\n");
    const auto res = run("spectrum --config " + (dir / "cfg.ini").string() + " --out " +
                         dir.string());
    CHECK(res.exit_code == 0);
    std::istringstream csv(slurp(dir / "dispersion.csv"));
    std::string header, line;
    std::getline(csv, header);
    std::vector<double> values;
    while (std::getline(csv, line)) {
        if (line.size() < 3) continue;
        values.push_back(std::stod(line.substr(line.find(',') + 1)));
    }
    REQUIRE(values.size() == 3);
    for (double v : values) CHECK(std::abs(v - values[0]) < 1e-10);
}

TEST_CASE("actionangle: exports the angle table") {
    const auto dir = fresh_dir("screwon_aa");
    write(dir / "cfg.ini",
          "[model]\nk = 1\nlambda = 1\n[conserved]\nc = 3\nm = -1\ns = 1\nh = 1\n"
          "[run]\nperiods = 1\nsamples = 60\n");
    const auto res = run("actionangle --config " + (dir / "cfg.ini").string() + " --out " +
                         dir.string());
    CHECK(res.exit_code == 0);
    const std::string csv = slurp(dir / "actionangle.csv");
    CHECK(csv.rfind("t,theta1,theta2,I1,I2", 0) == 0);
}

TEST_CASE("verify: clean run passes, fault injection fails with exit 2") {
    const auto dir = fresh_dir("screwon_verify");
    const auto ok = run("verify --out " + dir.string() + " --json");
    CHECK(ok.exit_code == 0);
    const json j = json::parse(ok.output);
    // schema self-check: array of {name, pass, value, threshold}
    REQUIRE(j.is_array());
    for (const auto& item : j) {
        CHECK(item.contains("name"));
        CHECK(item["name"].is_string());
        CHECK(item.contains("pass"));
        CHECK(item["pass"].is_boolean());
        CHECK(item.contains("value"));
        CHECK(item["value"].is_number());
        CHECK(item.contains("threshold"));
    }

    write(dir / "fault.ini", "[verify]\ninject_fault = rmatrix\n");
    const auto bad = run("verify --config " + (dir / "fault.ini").string() + " --out " +
                         dir.string());
    CHECK(bad.exit_code == 2);
    CHECK(bad.output.find("FAIL lax.rmatrix_fpb") != std::string::npos);
}

TEST_CASE("exit-code contract for broken inputs") {
    const auto dir = fresh_dir("screwon_errs");
    SUBCASE("config parse error exits 4 with line/column") {
        write(dir / "bad.ini", "[model]\nk 1\n");
        const auto res =
            run("simulate --config " + (dir / "bad.ini").string() + " --out " + dir.string());
        CHECK(res.exit_code == 4);
        CHECK(res.output.find("line 2") != std::string::npos);
    }
    SUBCASE("missing config exits 3") {
        const auto res = run("simulate --config " + (dir / "missing.ini").string() +
                             " --out " + dir.string());
        CHECK(res.exit_code == 3);
    }
}
