#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hnl/cli.hpp"

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = hnl::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

bool near(double a, double b, double tol = 1e-15) { return std::abs(a - b) <= tol; }

struct ScopedEnv {
    std::string key;
    std::string old_value;
    bool had_old = false;

    ScopedEnv(const std::string& k, const char* v) : key(k) {
        const char* old = std::getenv(key.c_str());
        had_old = old != nullptr;
        if (had_old) old_value = old;
        if (v) setenv(key.c_str(), v, 1);
        else unsetenv(key.c_str());
    }

    ~ScopedEnv() {
        if (had_old) setenv(key.c_str(), old_value.c_str(), 1);
        else unsetenv(key.c_str());
    }
};

} // namespace

TEST_CASE("bound prints the closed form") {
    const CliResult text = run_cli({"bound", "--theta", "0.5235988"});
    REQUIRE(text.code == 0);
    REQUIRE(text.out.find("P_E^m = 0.25") != std::string::npos);
    REQUIRE(text.out.find("p = 0.666667") != std::string::npos);

    const CliResult js = run_cli({"bound", "--overlap", "0.75", "--format", "json"});
    REQUIRE(js.code == 0);
    const json j = json::parse(js.out);
    REQUIRE(j.size() == 5);
    REQUIRE(near(j["theta"], std::acos(std::sqrt(0.75))));
    REQUIRE(near(j["overlap"], 0.75));
    REQUIRE(near(j["pe_min"], 0.25));
    REQUIRE(near(j["p"], 2.0 / 3.0));
    REQUIRE(near(j["optimal_axis"][0], 1.0));
    REQUIRE(near(j["optimal_axis"][1], 0.0));
    REQUIRE(near(j["optimal_axis"][2], 0.0));
}

TEST_CASE("usage errors exit 1 with a synopsis") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"bound", "--overlap", "2"},
             {"bound", "--theta", "0.5", "--overlap", "0.5"},
             {"bound"},
             {"frobnicate"},
             {},
             {"steer", "--theta", "0"},
             {"oracle", "--theta", "0.5", "--grid", "10"},
             {"simulate", "--theta", "0.5", "--detector", "weird:1"},
             {"simulate", "--theta", "0.5", "--detector", "super:-0.1"},
             {"nosig", "--theta", "0.5", "--format", "yaml"},
             {"sweep", "--theta-range", "1.0:0.5:0.1"},
             {"sweep", "--theta-range", "abc"},
             {"sweep", "--theta-range", "0.2:0.4:-0.1"},
         }) {
        const CliResult r = run_cli(args);
        INFO("args: " << (args.empty() ? "<none>" : args[0]));
        REQUIRE(r.code == 1);
        REQUIRE(r.err.find("usage: hnl") != std::string::npos);
    }
}

TEST_CASE("runtime domain errors exit 2") {
    REQUIRE(run_cli({"nosig", "--theta", "0.5", "--rounds", "50"}).code == 2);
    // epsilon above the bound for this theta
    REQUIRE(run_cli({"nosig", "--theta", "0.5235988", "--detector", "super:0.4"}).code == 2);
    REQUIRE(run_cli({"bound", "--theta", "0.5", "--output", "/nonexistent_dir/x.json"}).code == 2);
}

TEST_CASE("help exits 0") {
    const CliResult r = run_cli({"--help"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("bound") != std::string::npos);
}

TEST_CASE("steer report carries the construction at full precision") {
    const CliResult r = run_cli({"steer", "--theta", "0.5235987755982988", "--format", "json"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);

    const hnl::CanonicalGeometry g = hnl::canonical_geometry(0.5235987755982988);
    const hnl::BipartiteState psi = hnl::build_psi(g);
    REQUIRE(near(j["p"], g.p));
    REQUIRE(near(j["psi"][0][0], psi.c00.real()));
    REQUIRE(near(j["psi"][1][0], psi.c01.real()));
    REQUIRE(near(j["psi"][2][0], psi.c10.real()));
    REQUIRE(near(j["psi"][3][0], psi.c11.real()));
    REQUIRE(near(j["rho_bloch"][2], hnl::reduced_state_bob(psi).bloch().z));

    REQUIRE(near(j["computational"][0]["prob"], g.p));
    REQUIRE(near(j["primed"][0]["prob"], g.p));
    REQUIRE(j["computational"][0]["degenerate"] == false);
    REQUIRE(j["orthonormality_defect"].get<double>() <= 1e-10);
    REQUIRE(j["reconstruction_residual"].get<double>() <= 1e-10);
    REQUIRE(j["residual_computational"].get<double>() <= 1e-12);
    REQUIRE(j["residual_primed"].get<double>() <= 1e-12);
}

TEST_CASE("oracle report matches a direct library call") {
    const CliResult r = run_cli(
        {"oracle", "--theta", "0.5235987755982988", "--grid", "2000", "--povms", "500", "--seed", "9"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);

    const hnl::CanonicalGeometry g = hnl::canonical_geometry(0.5235987755982988);
    const hnl::OracleResult res = hnl::oracle_min_error(g, 2000, 500, 9);
    REQUIRE(j["min_error"].get<double>() == res.min_error);
    REQUIRE(j["projective_min"].get<double>() == res.projective_min);
    REQUIRE(j["povm_min"].get<double>() == res.povm_min);
    REQUIRE(j["seed"].get<std::uint64_t>() == 9);
    REQUIRE(near(j["bound"], 0.25));
}

TEST_CASE("simulate report matches a direct library call") {
    const CliResult r = run_cli({"simulate", "--theta", "0.5235987755982988", "--detector",
                                 "super:0.05,0.5", "--rounds", "500", "--sessions", "40",
                                 "--seed", "77"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);

    hnl::ProtocolConfig config;
    config.theta = 0.5235987755982988;
    config.detector = hnl::SuperQuantumSpec{0.05, 0.5};
    config.rounds = 500;
    config.sessions = 40;
    config.seed = 77;
    const hnl::SimulationSummary sum = hnl::estimate_bob_error(config);
    REQUIRE(j["bob_error"].get<double>() == sum.bob_error);
    REQUIRE(j["wrong_guesses"].get<long>() == sum.wrong_guesses);
    REQUIRE(j["freq0_bit0"].get<double>() == sum.freq0_bit0);
    REQUIRE(j["freq0_bit1"].get<double>() == sum.freq0_bit1);
    REQUIRE(j["detector"] == "super:0.050000000000000003;0.5");
}

TEST_CASE("nosig verdicts for physical and behavioral detectors") {
    const CliResult loud = run_cli({"nosig", "--theta", "0.5235988", "--detector",
                                    "super:0.05,0.5", "--rounds", "100000", "--seed", "42"});
    REQUIRE(loud.code == 0);
    const json lj = json::parse(loud.out);
    REQUIRE(lj["verdict"] == "signal");

    hnl::ProtocolConfig config;
    config.theta = 0.5235988;
    config.detector = hnl::SuperQuantumSpec{0.05, 0.5};
    config.rounds = 100000;
    config.seed = 42;
    const hnl::NoSignalReport rep = hnl::no_signal_test(config);
    REQUIRE(lj["freq0_bit0"].get<double>() == rep.freq0_bit0);
    REQUIRE(lj["freq0_bit1"].get<double>() == rep.freq0_bit1);
    REQUIRE(lj["gap"].get<double>() == rep.gap);
    REQUIRE(lj["z_statistic"].get<double>() == rep.z_statistic);

    const CliResult quiet = run_cli(
        {"nosig", "--theta", "0.5235988", "--detector", "optimal", "--rounds", "100000", "--seed", "42"});
    REQUIRE(quiet.code == 0);
    REQUIRE(json::parse(quiet.out)["verdict"] == "no_signal");
}

TEST_CASE("identical argv and seed give byte-identical reports") {
    const std::vector<std::string> argv = {"nosig", "--theta", "0.6", "--detector",
                                           "super:0.02,0.25", "--rounds", "20000", "--seed", "5"};
    const CliResult a = run_cli(argv);
    const CliResult b = run_cli(argv);
    REQUIRE(a.code == 0);
    REQUIRE(a.out == b.out);

    const std::vector<std::string> sweep_argv = {"sweep", "--theta-range", "0.3:0.9:0.3",
                                                 "--eps-range", "0.01:0.05:0.02", "--rounds",
                                                 "1000", "--seed", "8"};
    const CliResult c = run_cli(sweep_argv);
    const CliResult d = run_cli(sweep_argv);
    REQUIRE(c.code == 0);
    REQUIRE(c.out == d.out);
}

TEST_CASE("HNL_SEED supplies the default seed") {
    const std::vector<std::string> base = {"nosig", "--theta", "0.6", "--rounds", "5000"};

    ScopedEnv env("HNL_SEED", "777");
    const CliResult from_env = run_cli(base);
    REQUIRE(from_env.code == 0);

    std::vector<std::string> with_flag = base;
    with_flag.insert(with_flag.end(), {"--seed", "777"});
    ScopedEnv cleared("HNL_SEED", nullptr);
    const CliResult from_flag = run_cli(with_flag);
    REQUIRE(from_env.out == from_flag.out);

    ScopedEnv bad("HNL_SEED", "not-a-number");
    REQUIRE(run_cli(base).code == 1);
}

TEST_CASE("sweep emits the fixed csv schema") {
    const CliResult r = run_cli({"sweep", "--theta-range", "0.3:0.7:0.2", "--rounds", "1000",
                                 "--seed", "3"});
    REQUIRE(r.code == 0);

    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    REQUIRE(header == "theta,overlap,pe_min,p,detector,epsilon,gap,z,verdict");

    int rows = 0;
    std::string line;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    REQUIRE(rows == 3); // theta in {0.3, 0.5, 0.7}, detector column "optimal"
    REQUIRE(r.out.find("optimal") != std::string::npos);
    REQUIRE(r.out.find("no_signal") != std::string::npos);

    const CliResult super_sweep = run_cli({"sweep", "--theta-range", "0.5:0.6:0.1", "--eps-range",
                                           "0.01:0.03:0.01", "--rounds", "1000", "--seed", "3"});
    REQUIRE(super_sweep.code == 0);
    std::istringstream super_lines(super_sweep.out);
    std::getline(super_lines, header);
    rows = 0;
    while (std::getline(super_lines, line))
        if (!line.empty()) ++rows;
    REQUIRE(rows == 6); // 2 theta cells x 3 epsilon cells
    REQUIRE(super_sweep.out.find("signal") != std::string::npos);
}

TEST_CASE("sweep json rows match direct library calls") {
    const CliResult r = run_cli({"sweep", "--theta-range", "0.5:0.6:0.1", "--eps-range",
                                 "0.02:0.04:0.02", "--rounds", "2000", "--seed", "31",
                                 "--format", "json"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["rows"].size() == 4);

    const json& row = j["rows"][0];
    hnl::ProtocolConfig config;
    config.theta = 0.5;
    config.detector = hnl::SuperQuantumSpec{0.02, 0.5};
    config.rounds = 2000;
    config.seed = 31;
    const hnl::NoSignalReport rep = hnl::no_signal_test(config);
    REQUIRE(row["theta"].get<double>() == 0.5);
    REQUIRE(near(row["overlap"], std::cos(0.5) * std::cos(0.5)));
    REQUIRE(near(row["pe_min"], hnl::helstrom_bound(std::cos(0.5) * std::cos(0.5))));
    REQUIRE(row["detector"] == "super");
    REQUIRE(row["epsilon"].get<double>() == 0.02);
    REQUIRE(row["gap"].get<double>() == rep.gap);
    REQUIRE(row["z"].get<double>() == rep.z_statistic);
}

TEST_CASE("reports can be written to a file") {
    const std::string path = "/tmp/hnl_cli_test_report.json";
    std::remove(path.c_str());

    const CliResult direct = run_cli({"bound", "--theta", "0.7", "--format", "json"});
    const CliResult filed = run_cli({"bound", "--theta", "0.7", "--format", "json", "--output", path});
    REQUIRE(filed.code == 0);
    REQUIRE(filed.out.empty());

    std::ifstream in(path, std::ios::binary);
    std::stringstream content;
    content << in.rdbuf();
    REQUIRE(content.str() == direct.out);
    std::remove(path.c_str());
}

TEST_CASE("csv and text formats render for every command") {
    REQUIRE(run_cli({"bound", "--theta", "0.5", "--format", "csv"}).code == 0);
    REQUIRE(run_cli({"steer", "--theta", "0.5", "--format", "csv"}).code == 0);
    REQUIRE(run_cli({"oracle", "--theta", "0.5", "--grid", "1000", "--povms", "10", "--format", "text"}).code == 0);
    REQUIRE(run_cli({"simulate", "--theta", "0.5", "--rounds", "100", "--sessions", "4", "--format", "text"}).code == 0);
    REQUIRE(run_cli({"nosig", "--theta", "0.5", "--rounds", "200", "--format", "csv"}).code == 0);
    REQUIRE(run_cli({"sweep", "--theta-range", "0.4:0.5:0.1", "--rounds", "500", "--format", "json"}).code == 0);
    const CliResult text_sweep = run_cli({"sweep", "--theta-range", "0.4:0.5:0.1", "--rounds", "500", "--format", "text"});
    REQUIRE(text_sweep.code == 0);
}
