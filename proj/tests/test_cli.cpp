// End-to-end CLI checks: spawns the installed binary (path in TPDICKE_CLI),
// inspects exit codes, files and reproducibility.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli_path() {
    const char* p = std::getenv("TPDICKE_CLI");
    REQUIRE(p != nullptr);
    return p;
}

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    static int counter = 0;
    const auto out_file =
        fs::temp_directory_path() / ("tpd_cli_out_" + std::to_string(counter++) + ".txt");
    const std::string cmd = "SOURCE_DATE_EPOCH=1700000000 " + cli_path() + " " + args +
                            " > " + out_file.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream f(out_file);
    r.output.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    fs::remove(out_file);
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    return std::string(std::istreambuf_iterator<char>(f),
                       std::istreambuf_iterator<char>());
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("tpd_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

}  // namespace

TEST_CASE("ground-state: decoupled point exits 0 with exact values") {
    const auto r = run("ground-state --omega 1 --omega0 1 --gamma 0 --j 5");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("phase: normal") != std::string::npos);
    CHECK(r.output.find("-5") != std::string::npos);
    CHECK(r.output.find("converged yes") != std::string::npos);
}

TEST_CASE("ground-state: superradiant-region point with JSON output") {
    TempDir dir;
    const auto jpath = dir.path / "gs.json";
    const auto r = run("ground-state --omega 1 --omega0 0.02 --gamma 0.45 --j 10 --json " +
                       jpath.string());
    CHECK(r.exit_code == 0);
    const json doc = json::parse(slurp(jpath));
    CHECK(doc["analytic"]["e0"].get<double>() ==
          doctest::Approx(-0.30476351787993805).epsilon(1e-12));
    CHECK(doc["numeric"]["converged"].get<bool>());
    CHECK(doc["numeric"]["e0"].get<double>() ==
          doctest::Approx(-0.309440207049).epsilon(1e-9));
    CHECK(doc["phase"] == "superradiant");
}

TEST_CASE("ground-state: collapse regime exits 3 and still prints") {
    const auto r = run("ground-state --omega 1 --omega0 1 --gamma 0.6 --j 2 --n-max 16");
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("collapse") != std::string::npos);
    CHECK(r.output.find("E0") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("ground-state --omega 0 --omega0 1 --gamma 0 --j 5").exit_code == 2);
    CHECK(run("ground-state --j 0.3").exit_code == 2);
    CHECK(run("no-such-command").exit_code == 2);
    CHECK(run("phase-diagram --j 10 --grid nonsense").exit_code == 2);
    CHECK(run("phase-diagram --j 10 --output /nonexistent/dir/out.csv").exit_code == 2);
    CHECK(run("phase-diagram --j 10 --mode numeric --gamma-range 0:0.6 --grid 3x3 "
              "--output pd.csv")
              .exit_code == 2);
}

TEST_CASE("phase-diagram writes a parseable table") {
    TempDir dir;
    const auto csv = dir.path / "pd.csv";
    const auto r = run("phase-diagram --j 10 --jmax-mode off --grid 21x21 --output " +
                       csv.string());
    CHECK(r.exit_code == 0);
    const std::string text = slurp(csv);
    CHECK(text.find("# tool: tpdicke") == 0);
    CHECK(text.find("omega,omega0,gamma,j,") != std::string::npos);
    // 4 metadata lines + header + 441 rows
    CHECK(std::count(text.begin(), text.end(), '\n') == 446);
}

TEST_CASE("jmax-mode only produces the limit block alone") {
    TempDir dir;
    const auto csv = dir.path / "pd_inf.csv";
    const auto r = run("phase-diagram --j 10 --jmax-mode only --grid 5x5 --output " +
                       csv.string());
    CHECK(r.exit_code == 0);
    const std::string text = slurp(csv);
    CHECK(std::count(text.begin(), text.end(), '\n') == 30);  // 25 rows
    CHECK(text.find("inf") != std::string::npos);
}

TEST_CASE("surface and slice emit reproducible SVG plots") {
    TempDir dir;
    const auto svg1 = dir.path / "s1.svg";
    const auto svg2 = dir.path / "s2.svg";
    const std::string base = "surface --omega 1 --omega0 2 --gamma 0.5 --grid 31x31 "
                             "--q-range -6:6 --p-range -6:6";
    CHECK(run(base + " --output " + (dir.path / "a.csv").string() + " --plot " +
              svg1.string())
              .exit_code == 0);
    CHECK(run(base + " --output " + (dir.path / "b.csv").string() + " --plot " +
              svg2.string())
              .exit_code == 0);
    const std::string a = slurp(svg1), b = slurp(svg2);
    CHECK(a == b);
    CHECK(a.find("<svg") == 0);
    CHECK(a.find("max:") != std::string::npos);

    const auto line_svg = dir.path / "slice.svg";
    const auto rr = run("slice --gamma 0.45 --omega0-range -0.05:0.05 --points 51 "
                        "--j-list 20,100 --output " +
                        (dir.path / "slice.csv").string() + " --plot " +
                        line_svg.string());
    CHECK(rr.exit_code == 0);
    CHECK(slurp(line_svg).find("polyline") != std::string::npos);
}

TEST_CASE("identical sweep runs produce identical CSV bytes") {
    TempDir dir;
    const auto a = dir.path / "a.csv";
    const auto b = dir.path / "b.csv";
    const std::string cmd = "phase-diagram --j 10 --grid 15x15 --output ";
    CHECK(run(cmd + a.string() + " --workers 1").exit_code == 0);
    CHECK(run(cmd + b.string() + " --workers 4").exit_code == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("config file values are used and flags win") {
    TempDir dir;
    const auto cfg = dir.path / "config.json";
    {
        json doc;
        doc["model"] = {{"omega", 1.0}, {"omega0", 0.02}, {"gamma", 0.45}, {"j", 10.0}};
        std::ofstream f(cfg);
        f << doc.dump();
    }
    const auto r1 = run("ground-state --config " + cfg.string());
    CHECK(r1.exit_code == 0);
    CHECK(r1.output.find("superradiant") != std::string::npos);
    // flag overrides the config gamma: collapses
    const auto r2 = run("ground-state --config " + cfg.string() + " --gamma 0.7");
    CHECK(r2.exit_code == 3);
    CHECK(r2.output.find("collapse") != std::string::npos);
}

TEST_CASE("config round trip: output metadata echoes the spec") {
    TempDir dir;
    const auto cfg = dir.path / "grid.json";
    {
        json doc;
        doc["grid"] = {
            {"model", {{"omega", 1.0}, {"omega0", 0.0}, {"gamma", 0.0}, {"two_j", 20}}},
            {"axes", json::array({{{"param", "omega0"}, {"min", 0.0}, {"max", 0.4},
                                   {"count", 7}},
                                  {{"param", "gamma"}, {"min", 0.0}, {"max", 0.4},
                                   {"count", 7}}})}};
        std::ofstream f(cfg);
        f << doc.dump();
    }
    const auto out = dir.path / "pd.json";
    const auto r = run("phase-diagram --config " + cfg.string() +
                       " --grid 7x7 --omega0-range 0:0.4 --gamma-range 0:0.4 --j 10 "
                       "--format json --output " +
                       out.string());
    CHECK(r.exit_code == 0);
    const json doc = json::parse(slurp(out));
    const json spec = doc["meta"]["spec"];
    // parses back to the identical canonical config
    CHECK(spec["model"]["two_j"] == 20);
    CHECK(spec["axes"].size() == 2);
    CHECK(spec["axes"][0]["count"] == 7);
    CHECK(spec["mode"] == "analytic");
    CHECK(doc["rows"].size() == 49);
    // a second run from the echoed spec yields the same rows
    const auto out2 = dir.path / "pd2.json";
    {
        json cfg2;
        cfg2["grid"] = spec;
        std::ofstream f(dir.path / "grid2.json");
        f << cfg2.dump();
    }
    const auto r2 = run("phase-diagram --config " + (dir.path / "grid2.json").string() +
                        " --format json --output " + out2.string());
    CHECK(r2.exit_code == 0);
    const json doc2 = json::parse(slurp(out2));
    CHECK(doc2["meta"]["spec"] == spec);
    CHECK(doc2["rows"] == doc["rows"]);
}

TEST_CASE("stationary and limit subcommands") {
    TempDir dir;
    const auto r = run("stationary --omega 1 --omega0 0.02 --gamma 0.45 --j 10 --json " +
                       (dir.path / "st.json").string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("x+") != std::string::npos);
    CHECK(r.output.find("y+") != std::string::npos);
    const json doc = json::parse(slurp(dir.path / "st.json"));
    CHECK(doc["squeezed"][1]["q"]["re"].get<double>() ==
          doctest::Approx(0.32482624038425612).epsilon(1e-12));
    CHECK(doc["coherent"][1]["status"] == "complex");

    const auto rl = run("limit --omega 1 --omega0 2 --gamma 0.4 --j-list 10,100,1000 "
                        "--output " +
                        (dir.path / "limit.csv").string());
    CHECK(rl.exit_code == 0);
    CHECK(rl.output.find("dist(x+, y+)") != std::string::npos);
}

TEST_CASE("verify subcommand passes") {
    const auto r = run("verify");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("[FAIL]") == std::string::npos);
    CHECK(r.output.find("checks passed") != std::string::npos);
}

TEST_CASE("hamiltonian dump flag") {
    TempDir dir;
    const auto dump = dir.path / "h.txt";
    const auto r = run("ground-state --omega 1 --omega0 1 --gamma 0.1 --j 0.5 "
                       "--dump-matrix " +
                       dump.string() + " --dump-nmax 2");
    CHECK(r.exit_code == 0);
    const std::string text = slurp(dump);
    CHECK(text.substr(0, 3) == "6 8");  // 6x6, 6 diagonal + 2 coupling entries
}
