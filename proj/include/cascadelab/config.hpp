#pragma once

// Versioned JSON experiment configuration: one file describes the network
// source, the probability grid, the strategies with their hyper-parameters,
// and the utility model. Command-line "--set dotted.key=value" overrides are
// applied to the JSON before validation; validation reports every violated
// precondition at once.

#include "cascadelab/experiments.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace cascadelab {

inline constexpr int kConfigVersion = 1;

struct NetworkConfig {
    std::string family = "er"; // er | small_world | config_power_law | edge_list
    uint32_t n = 1000;
    double mean_degree = 3.0;      // er
    uint32_t ring_degree = 4;      // small_world
    double rewire_prob = 0.1;      // small_world
    double power_law_alpha = 2.5;  // config_power_law
    uint32_t min_degree = 2;       // config_power_law
    std::string path;              // edge_list
    bool dominant_component = false;
    uint32_t instances = 1; // generated-network replicas (distinct seeds)
};

struct GridConfig {
    std::string kind = "refined_critical"; // uniform | refined | refined_critical
    double step = 0.025;        // uniform
    double coarse_step = 0.025; // refined*
    double fine_step = 0.0025;  // refined*
    double fine_lo = 0.2;       // refined
    double fine_hi = 0.45;      // refined
    double halfwidth = 0.1;     // refined_critical
};

struct ExperimentConfig {
    int config_version = kConfigVersion;
    uint64_t rng_seed = 0;
    std::string output_dir = "out";
    NetworkConfig network;
    GridConfig grid;
    uint32_t k = 3;
    std::vector<std::string> strategies{"random", "hill_climb"};
    uint64_t trials = 5000;
    uint32_t trials_per_eval = 200;
    uint32_t local_mass = 100;
    double noise_sigma = 0.0;
    std::string picture = "static"; // static | dynamic
    UtilityParams utility;
    double width_threshold_fraction = 0.01;
    std::vector<uint32_t> m_values{25, 50, 100};
    std::string fit_input; // CSV consumed by the `fit` subcommand
};

// Parse + validate; throws config_error listing every violation.
ExperimentConfig config_from_json(const nlohmann::json& j);

// Fully resolved echo (inverse of config_from_json on valid input).
nlohmann::json config_to_json(const ExperimentConfig& c);

// "dotted.key=value" onto the JSON tree; value parsed as JSON when possible,
// treated as a string otherwise.
void apply_override(nlohmann::json& j, const std::string& assignment);

// Empty path = all defaults; overrides applied before validation.
ExperimentConfig load_config(const std::string& path,
                             const std::vector<std::string>& overrides);

std::vector<Strategy> parse_strategies(const std::vector<std::string>& names);

} // namespace cascadelab
