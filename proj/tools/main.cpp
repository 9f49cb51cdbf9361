// cascade-lab: command-line front end for the influence-maximization
// experiment suite. Every subcommand reads one JSON config (plus overrides),
// writes its outputs atomically into the output directory, and exits
// 0 ok | 2 config error | 3 data error | 4 runtime error.

#include "cascadelab/config.hpp"
#include "cascadelab/edge_list.hpp"
#include "cascadelab/errors.hpp"
#include "cascadelab/experiments.hpp"
#include "cascadelab/generators.hpp"
#include "cascadelab/influence.hpp"
#include "cascadelab/io_util.hpp"
#include "cascadelab/parallel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace cl = cascadelab;
using nlohmann::json;

namespace {

struct CliArgs {
    std::string command;
    std::string config_path;
    std::vector<std::string> sets;
    std::optional<uint64_t> seed;
    std::optional<std::string> output_dir;
    std::optional<unsigned> threads;
    std::string input; // fit / ingest input override
};

// shortest round-trip decimal form, deterministic across platforms/threads
std::string num(double value) { return json(value).dump(); }

struct Instance {
    cl::Graph graph;
    cl::NetworkDescriptor desc;
};

cl::GeneratorSpec spec_from_config(const cl::NetworkConfig& net) {
    cl::GeneratorSpec spec;
    spec.family = cl::family_from_name(net.family);
    spec.n = net.n;
    spec.mean_degree = net.mean_degree;
    spec.ring_degree = net.ring_degree;
    spec.rewire_prob = net.rewire_prob;
    spec.power_law_alpha = net.power_law_alpha;
    spec.min_degree = net.min_degree;
    return spec;
}

// Instance i of a generated network uses seed rng_seed + i, so a multi-
// instance run is reproducible one instance at a time.
std::vector<Instance> build_networks(const cl::ExperimentConfig& cfg) {
    std::vector<Instance> instances;
    if (cfg.network.family == "edge_list") {
        cl::IngestResult ingested = cl::ingest_edge_list(cfg.network.path);
        Instance inst;
        inst.graph = std::move(ingested.graph);
        inst.desc.family = "edge_list";
        inst.desc.seed = cfg.rng_seed;
        if (cfg.network.dominant_component)
            inst.graph = cl::dominant_component(inst.graph).graph;
        inst.desc.n = inst.graph.node_count();
        inst.desc.edge_count = inst.graph.edge_count();
        instances.push_back(std::move(inst));
        return instances;
    }
    const cl::GeneratorSpec spec = spec_from_config(cfg.network);
    for (uint32_t i = 0; i < cfg.network.instances; ++i) {
        Instance inst;
        inst.desc.seed = cfg.rng_seed + i;
        inst.graph = cl::generate(spec, inst.desc.seed);
        if (cfg.network.dominant_component)
            inst.graph = cl::dominant_component(inst.graph).graph;
        inst.desc.family = cfg.network.family;
        inst.desc.n = inst.graph.node_count();
        inst.desc.edge_count = inst.graph.edge_count();
        instances.push_back(std::move(inst));
    }
    return instances;
}

cl::PGrid make_grid(const cl::GridConfig& grid, const cl::Graph& g) {
    if (grid.kind == "uniform") return cl::PGrid::uniform(grid.step);
    if (grid.kind == "refined")
        return cl::PGrid::refined(grid.coarse_step, grid.fine_step, grid.fine_lo, grid.fine_hi);
    return cl::PGrid::refined_around_critical(g, grid.coarse_step, grid.fine_step,
                                              grid.halfwidth);
}

cl::SweepOptions sweep_options(const cl::ExperimentConfig& cfg, uint64_t instance_seed) {
    cl::SweepOptions opts;
    opts.k = cfg.k;
    opts.strategies = cl::parse_strategies(cfg.strategies);
    opts.trials = cfg.trials;
    opts.trials_per_eval = cfg.trials_per_eval;
    opts.local_mass = cfg.local_mass;
    opts.noise_sigma = cfg.noise_sigma;
    opts.picture =
        cfg.picture == "dynamic" ? cl::Picture::dynamic_cascade : cl::Picture::static_percolation;
    opts.rng_seed = instance_seed;
    return opts;
}

std::string sweep_csv(const cl::SweepResult& result, const cl::UtilityParams& utility) {
    std::ostringstream out;
    out << "p,strategy,median,mean,se,cost_steps,utility\n";
    for (const cl::SweepRow& row : result.rows) {
        out << num(row.p) << ',' << cl::strategy_name(row.strategy) << ',' << num(row.median)
            << ',' << num(row.mean) << ',' << num(row.std_error) << ',' << row.cost_steps << ','
            << num(cl::row_utility(row, utility, result)) << '\n';
    }
    return out.str();
}

json instance_json(const Instance& inst) {
    return json{{"family", inst.desc.family},
                {"seed", inst.desc.seed},
                {"n", inst.desc.n},
                {"edges", inst.desc.edge_count}};
}

void write_summary(const cl::ExperimentConfig& cfg, const std::string& command, json body) {
    body["command"] = command;
    body["config"] = cl::config_to_json(cfg);
    body["rng_seed"] = cfg.rng_seed;
    const std::filesystem::path path = std::filesystem::path(cfg.output_dir) / "summary.json";
    cl::write_file_atomic(path, body.dump(2) + "\n");
    std::cout << "wrote " << path.string() << "\n";
}

void prepare_output_dir(const cl::ExperimentConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec)
        throw cl::data_error("cannot create output directory '" + cfg.output_dir + "'");
}

// ---- subcommands ----

int run_generate(const cl::ExperimentConfig& cfg) {
    if (cfg.network.family == "edge_list")
        throw cl::config_error("generate: network.family must be a generator family");
    prepare_output_dir(cfg);
    json instances = json::array();
    const std::vector<Instance> built = build_networks(cfg);
    for (size_t i = 0; i < built.size(); ++i) {
        const std::string name = "network_" + std::to_string(i) + ".txt";
        cl::write_edge_list(built[i].graph, std::filesystem::path(cfg.output_dir) / name);
        json entry = instance_json(built[i]);
        entry["file"] = name;
        instances.push_back(std::move(entry));
    }
    write_summary(cfg, "generate", json{{"instances", instances}});
    return 0;
}

int run_ingest(const cl::ExperimentConfig& cfg, const std::string& input_override) {
    const std::string path = input_override.empty() ? cfg.network.path : input_override;
    if (path.empty())
        throw cl::config_error("ingest: provide network.path in the config or --input");
    cl::IngestResult result = cl::ingest_edge_list(path);
    prepare_output_dir(cfg);
    const std::string cleaned = "cleaned.txt";
    cl::write_edge_list(result.graph, std::filesystem::path(cfg.output_dir) / cleaned);
    write_summary(cfg, "ingest",
                  json{{"n", result.graph.node_count()},
                       {"edges", result.graph.edge_count()},
                       {"self_loops_dropped", result.self_loops_dropped},
                       {"duplicate_edges_dropped", result.duplicate_edges_dropped},
                       {"declared_nodes", result.declared_nodes},
                       {"file", cleaned}});
    return 0;
}

// sweep | width | utility share the sweep loop and differ in the summary
int run_sweeps(const cl::ExperimentConfig& cfg, const std::string& command) {
    prepare_output_dir(cfg);
    const std::vector<Instance> built = build_networks(cfg);
    json instances = json::array();
    for (size_t i = 0; i < built.size(); ++i) {
        const Instance& inst = built[i];
        const cl::PGrid grid = make_grid(cfg.grid, inst.graph);
        const cl::SweepResult result =
            cl::sweep(inst.graph, grid, sweep_options(cfg, inst.desc.seed), inst.desc);
        const std::string csv_name = "sweep_" + std::to_string(i) + ".csv";
        cl::write_file_atomic(std::filesystem::path(cfg.output_dir) / csv_name,
                              sweep_csv(result, cfg.utility));

        json entry = instance_json(inst);
        entry["csv"] = csv_name;
        entry["grid_points"] = grid.points.size();
        if (result.has_strategy(cl::Strategy::hill_climb) &&
            result.has_strategy(cl::Strategy::random)) {
            entry["optimization_region_width"] =
                cl::optimization_region_width(result, cfg.width_threshold_fraction);
            if (command == "utility") {
                entry["positive_utility_width"] =
                    cl::positive_utility_width(result, cfg.utility);
                json added;
                for (const auto& [strategy, value] :
                     cl::expected_added_utility_over_prior(result, cfg.utility))
                    added[cl::strategy_name(strategy)] = value;
                entry["expected_added_utility"] = std::move(added);
            }
        }
        instances.push_back(std::move(entry));
    }
    json body{{"instances", instances}};
    std::vector<double> widths;
    for (const json& entry : instances)
        if (entry.contains("optimization_region_width"))
            widths.push_back(entry["optimization_region_width"].get<double>());
    if (!widths.empty()) {
        double mean = 0.0;
        for (const double w : widths) mean += w;
        mean /= static_cast<double>(widths.size());
        double var = 0.0;
        for (const double w : widths) var += (w - mean) * (w - mean);
        var = widths.size() > 1 ? var / static_cast<double>(widths.size() - 1) : 0.0;
        body["width_mean"] = mean;
        body["width_std"] = std::sqrt(var);
    }
    write_summary(cfg, command, body);
    return 0;
}

int run_fit(const cl::ExperimentConfig& cfg, const std::string& input_override) {
    const std::string path = input_override.empty() ? cfg.fit_input : input_override;
    if (path.empty()) throw cl::config_error("fit: provide fit_input in the config or --input");

    std::istringstream in(cl::read_file(path));
    std::string line;
    if (!std::getline(in, line) || line.find("n,width") == std::string::npos)
        throw cl::data_error(path + ": expected CSV header 'n,width'");
    std::vector<double> sizes, widths;
    uint64_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        double n = 0.0, w = 0.0;
        char comma = 0;
        std::istringstream row(line);
        if (!(row >> n >> comma >> w) || comma != ',')
            throw cl::data_error(path + ":" + std::to_string(line_number) +
                                 ": expected 'n,width'");
        sizes.push_back(n);
        widths.push_back(w);
    }
    const cl::WidthFit fit = cl::fit_power_law(sizes, widths);
    prepare_output_dir(cfg);
    write_summary(cfg, "fit",
                  json{{"fit",
                        json{{"amplitude", fit.amplitude},
                             {"exponent", fit.exponent},
                             {"amplitude_se", fit.amplitude_se},
                             {"exponent_se", fit.exponent_se},
                             {"residual_rms", fit.residual_rms},
                             {"points_used", fit.points_used},
                             {"points_dropped", fit.points_dropped}}}});
    return 0;
}

int run_mratio(const cl::ExperimentConfig& cfg) {
    prepare_output_dir(cfg);
    const std::vector<Instance> built = build_networks(cfg);
    json instances = json::array();
    for (const Instance& inst : built) {
        const cl::PGrid grid = make_grid(cfg.grid, inst.graph);
        const cl::MRatioResult result = cl::m_robustness_ratio(
            inst.graph, cfg.m_values, grid, sweep_options(cfg, inst.desc.seed));
        json ratios;
        for (const auto& [mass, ratio] : result.ratio_by_mass)
            ratios[std::to_string(mass)] = ratio;
        json entry = instance_json(inst);
        entry["ratio_by_mass"] = std::move(ratios);
        instances.push_back(std::move(entry));
    }
    write_summary(cfg, "mratio", json{{"instances", instances}});
    return 0;
}

int run_oracle_check(const cl::ExperimentConfig& cfg) {
    const cl::OracleReport report = cl::oracle_agreement_suite(cfg.rng_seed);
    prepare_output_dir(cfg);
    json failures = json::array();
    for (const cl::OracleCase& detail : report.details)
        if (!detail.pass)
            failures.push_back(json{{"case", detail.description},
                                    {"exact", detail.exact},
                                    {"mc_mean", detail.mc_mean},
                                    {"mc_se", detail.mc_std_error}});
    write_summary(cfg, "oracle-check",
                  json{{"cases", report.cases},
                       {"failures", report.failures},
                       {"failed_cases", failures}});
    std::cout << "oracle agreement: " << (report.cases - report.failures) << "/" << report.cases
              << " cases passed\n";
    if (report.failures > 0)
        throw std::runtime_error("oracle agreement failed for " +
                                 std::to_string(report.failures) + " of " +
                                 std::to_string(report.cases) + " cases");
    return 0;
}

int dispatch(const CliArgs& args) {
    cl::ExperimentConfig cfg = cl::load_config(args.config_path, args.sets);
    if (args.seed) cfg.rng_seed = *args.seed;
    if (args.output_dir) cfg.output_dir = *args.output_dir;
    if (args.threads) cl::par::set_thread_cap(*args.threads);

    if (args.command == "generate") return run_generate(cfg);
    if (args.command == "ingest") return run_ingest(cfg, args.input);
    if (args.command == "sweep" || args.command == "width" || args.command == "utility")
        return run_sweeps(cfg, args.command);
    if (args.command == "fit") return run_fit(cfg, args.input);
    if (args.command == "mratio") return run_mratio(cfg);
    if (args.command == "oracle-check") return run_oracle_check(cfg);
    throw cl::config_error("unknown subcommand '" + args.command + "'");
}

void print_error(const char* type, const std::string& message) {
    std::cerr << json{{"error", json{{"type", type}, {"message", message}}}}.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"influence-maximization experiments on percolating networks"};
    app.require_subcommand(1);

    CliArgs args;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"generate", "generate networks and write them as edge lists"},
        {"ingest", "parse + clean an edge list, report statistics"},
        {"sweep", "sweep contagion probability, estimate seeding strategies"},
        {"width", "sweep and report optimization-region widths"},
        {"fit", "power-law fit of widths vs network size from a CSV"},
        {"utility", "sweep and report utility/worthwhileness measures"},
        {"mratio", "local-vs-hill-climb robustness ratios over sub-network mass"},
        {"oracle-check", "Monte-Carlo vs exact-enumeration agreement suite"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", args.config_path, "JSON config file");
        sub->add_option("--set", args.sets, "override: dotted.key=value (repeatable)");
        sub->add_option("--seed", args.seed, "override rng_seed");
        sub->add_option("--output-dir", args.output_dir, "override output directory");
        sub->add_option("--threads", args.threads, "worker thread cap");
        if (name == "fit" || name == "ingest")
            sub->add_option("--input", args.input, "input file (overrides the config)");
        sub->callback([&args, name = name] { args.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        std::cerr << e.what() << "\n";
        print_error("config", e.what());
        return 2;
    }

    try {
        return dispatch(args);
    } catch (const cl::config_error& e) {
        print_error("config", e.what());
        return 2;
    } catch (const cl::data_error& e) {
        print_error("data", e.what());
        return 3;
    } catch (const std::exception& e) {
        print_error("runtime", e.what());
        return 4;
    }
}
