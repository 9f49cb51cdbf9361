// End-to-end tests that drive the installed cascade-lab binary through its
// subcommands and verify exit codes, file outputs, and determinism.

#include "cascadelab/io_util.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;
namespace fs = std::filesystem;

TEST_SUITE_BEGIN("cli");

namespace {

const std::string kCli = CASCADE_LAB_CLI_PATH;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path workspace() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "cascadelab_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    const fs::path out_file = workspace() / "stdout.txt";
    const fs::path err_file = workspace() / "stderr.txt";
    const std::string cmd = env_prefix + kCli + " " + args + " >" + out_file.string() + " 2>" +
                            err_file.string();
    const int raw = std::system(cmd.c_str());
    RunResult result;
    result.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    return result;
}

json read_summary(const fs::path& dir) { return json::parse(slurp(dir / "summary.json")); }

// tiny but non-trivial sweep configuration that runs in well under a second
json tiny_sweep_config() {
    return json{{"config_version", 1},
                {"rng_seed", 3},
                {"network", json{{"family", "er"}, {"n", 40}, {"mean_degree", 3.0}}},
                {"grid", json{{"kind", "uniform"}, {"step", 0.5}}},
                {"k", 2},
                {"strategies", json::array({"random", "hill_climb"})},
                {"trials", 200},
                {"trials_per_eval", 20}};
}

fs::path write_config(const json& cfg, const std::string& name) {
    const fs::path path = workspace() / name;
    cascadelab::write_file_atomic(path, cfg.dump(2) + "\n");
    return path;
}

} // namespace

TEST_CASE("help exits 0, missing subcommand exits 2") {
    CHECK(run("--help").code == 0);
    const RunResult bare = run("");
    CHECK(bare.code == 2);
    const RunResult unknown = run("frobnicate");
    CHECK(unknown.code == 2);
}

TEST_CASE("config violations exit 2 with a machine-readable error") {
    const fs::path dir = workspace() / "bad_config";
    const RunResult r = run("sweep --set k=0 --output-dir " + dir.string());
    CHECK(r.code == 2);
    const json err = json::parse(r.err);
    CHECK(err["error"]["type"] == "config");
    CHECK(err["error"]["message"].get<std::string>().find("k:") != std::string::npos);
}

TEST_CASE("missing input data exits 3") {
    const fs::path dir = workspace() / "missing_input";
    const RunResult r =
        run("ingest --input /nonexistent/edges.txt --output-dir " + dir.string());
    CHECK(r.code == 3);
    CHECK(json::parse(r.err)["error"]["type"] == "data");
}

TEST_CASE("generate then ingest round trip") {
    const fs::path gen_dir = workspace() / "gen";
    const RunResult gen = run("generate --set network.n=30 --set network.mean_degree=3.0"
                              " --seed 7 --output-dir " + gen_dir.string());
    REQUIRE(gen.code == 0);

    const json gen_summary = read_summary(gen_dir);
    CHECK(gen_summary["command"] == "generate");
    CHECK(gen_summary["rng_seed"] == 7);
    CHECK(gen_summary["config"]["network"]["n"] == 30);
    CHECK(gen_summary["config"]["config_version"] == 1);
    REQUIRE(gen_summary["instances"].size() == 1);
    const uint64_t edges = gen_summary["instances"][0]["edges"].get<uint64_t>();

    const fs::path network_file = gen_dir / "network_0.txt";
    REQUIRE(fs::exists(network_file));
    CHECK(slurp(network_file).rfind("# nodes 30\n", 0) == 0);

    const fs::path ing_dir = workspace() / "ing";
    const RunResult ing =
        run("ingest --input " + network_file.string() + " --output-dir " + ing_dir.string());
    REQUIRE(ing.code == 0);
    const json ing_summary = read_summary(ing_dir);
    CHECK(ing_summary["n"] == 30);
    CHECK(ing_summary["edges"] == edges);
    CHECK(ing_summary["self_loops_dropped"] == 0);
    CHECK(ing_summary["duplicate_edges_dropped"] == 0);
    CHECK(ing_summary["declared_nodes"] == 30);
}

TEST_CASE("sweep writes the fixed CSV schema and a config echo") {
    const fs::path cfg_path = write_config(tiny_sweep_config(), "sweep.json");
    const fs::path dir = workspace() / "sweep_out";
    const RunResult r = run("sweep --config " + cfg_path.string() + " --output-dir " +
                            dir.string());
    REQUIRE(r.code == 0);

    const std::string csv = slurp(dir / "sweep_0.csv");
    CHECK(csv.rfind("p,strategy,median,mean,se,cost_steps,utility\n", 0) == 0);
    // 3 grid points x 2 strategies + header
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
    CHECK(csv.find("hill_climb") != std::string::npos);

    const json summary = read_summary(dir);
    CHECK(summary["command"] == "sweep");
    CHECK(summary["rng_seed"] == 3);
    CHECK(summary["config"]["trials"] == 200);
    CHECK(summary["instances"][0]["csv"] == "sweep_0.csv");
    CHECK(summary["instances"][0]["grid_points"] == 3);
    CHECK(summary["instances"][0]["optimization_region_width"].get<double>() >= 0.0);
    CHECK(summary["width_mean"].get<double>() >= 0.0);
}

TEST_CASE("identical config and seed give byte-identical CSVs") {
    const fs::path cfg_path = write_config(tiny_sweep_config(), "det.json");
    const fs::path dir1 = workspace() / "det1";
    const fs::path dir2 = workspace() / "det2";
    const fs::path dir3 = workspace() / "det3";
    REQUIRE(run("sweep --config " + cfg_path.string() + " --threads 1 --output-dir " +
                dir1.string()).code == 0);
    REQUIRE(run("sweep --config " + cfg_path.string() + " --threads 2 --output-dir " +
                dir2.string()).code == 0);
    // SIMD backend choice must not change results either
    REQUIRE(run("sweep --config " + cfg_path.string() + " --output-dir " + dir3.string(),
                "CASCADE_LAB_SIMD=scalar ").code == 0);
    const std::string csv1 = slurp(dir1 / "sweep_0.csv");
    CHECK(csv1 == slurp(dir2 / "sweep_0.csv"));
    CHECK(csv1 == slurp(dir3 / "sweep_0.csv"));
}

TEST_CASE("utility command reports worthwhileness measures") {
    json cfg = tiny_sweep_config();
    cfg["utility"] = json{{"cost_per_time", 1e-4}};
    const fs::path cfg_path = write_config(cfg, "utility.json");
    const fs::path dir = workspace() / "utility_out";
    const RunResult r = run("utility --config " + cfg_path.string() + " --output-dir " +
                            dir.string());
    REQUIRE(r.code == 0);
    const json entry = read_summary(dir)["instances"][0];
    CHECK(entry.contains("positive_utility_width"));
    CHECK(entry["expected_added_utility"].contains("hill_climb"));
}

TEST_CASE("fit recovers a planted power law from a CSV") {
    std::string csv = "n,width\n";
    for (const double n : {500.0, 1000.0, 2000.0, 4000.0})
        csv += json(n).dump() + "," + json(2.75 * std::pow(n, -0.4)).dump() + "\n";
    const fs::path csv_path = workspace() / "widths.csv";
    cascadelab::write_file_atomic(csv_path, csv);

    const fs::path dir = workspace() / "fit_out";
    const RunResult r =
        run("fit --input " + csv_path.string() + " --output-dir " + dir.string());
    REQUIRE(r.code == 0);
    const json fit = read_summary(dir)["fit"];
    CHECK(fit["exponent"].get<double>() == doctest::Approx(0.4).epsilon(1e-6));
    CHECK(fit["amplitude"].get<double>() == doctest::Approx(2.75).epsilon(1e-6));
    CHECK(fit["points_used"] == 4);

    // malformed rows are data errors with a line number
    cascadelab::write_file_atomic(csv_path, "n,width\n1000,0.5\noops\n");
    const RunResult bad =
        run("fit --input " + csv_path.string() + " --output-dir " + dir.string());
    CHECK(bad.code == 3);
    CHECK(json::parse(bad.err)["error"]["message"].get<std::string>().find(":3:") !=
          std::string::npos);
}

TEST_SUITE_END();
