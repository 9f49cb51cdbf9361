#include "cascadelab/config.hpp"
#include "cascadelab/errors.hpp"
#include "cascadelab/io_util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>

namespace cascadelab {

namespace {

struct Violations {
    std::vector<std::string> items;
    void add(const std::string& message) { items.push_back(message); }
};

void check_keys(const nlohmann::json& obj, const std::string& scope,
                const std::set<std::string>& allowed, Violations& v) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) v.add(scope + key + ": unknown key");
}

void get_string(const nlohmann::json& obj, const char* key, std::string& out,
                const std::string& scope, Violations& v) {
    if (!obj.contains(key)) return;
    if (!obj[key].is_string()) {
        v.add(scope + key + ": expected a string");
        return;
    }
    out = obj[key].get<std::string>();
}

void get_bool(const nlohmann::json& obj, const char* key, bool& out, const std::string& scope,
              Violations& v) {
    if (!obj.contains(key)) return;
    if (!obj[key].is_boolean()) {
        v.add(scope + key + ": expected a boolean");
        return;
    }
    out = obj[key].get<bool>();
}

void get_double(const nlohmann::json& obj, const char* key, double& out,
                const std::string& scope, Violations& v) {
    if (!obj.contains(key)) return;
    if (!obj[key].is_number()) {
        v.add(scope + key + ": expected a number");
        return;
    }
    out = obj[key].get<double>();
}

template <typename UInt>
void get_uint(const nlohmann::json& obj, const char* key, UInt& out, const std::string& scope,
              Violations& v) {
    if (!obj.contains(key)) return;
    const nlohmann::json& value = obj[key];
    if (value.is_number_integer()) {
        if (!value.is_number_unsigned() && value.get<int64_t>() < 0) {
            v.add(scope + std::string(key) + ": expected a non-negative integer");
            return;
        }
        const uint64_t raw = value.get<uint64_t>();
        if (raw > std::numeric_limits<UInt>::max()) {
            v.add(scope + std::string(key) + ": value too large");
            return;
        }
        out = static_cast<UInt>(raw);
        return;
    }
    v.add(scope + std::string(key) + ": expected an integer");
}

NetworkConfig parse_network(const nlohmann::json& obj, Violations& v) {
    NetworkConfig net;
    const std::string scope = "network.";
    check_keys(obj, scope,
               {"family", "n", "mean_degree", "ring_degree", "rewire_prob", "power_law_alpha",
                "min_degree", "path", "dominant_component", "instances"},
               v);
    get_string(obj, "family", net.family, scope, v);
    get_uint(obj, "n", net.n, scope, v);
    get_double(obj, "mean_degree", net.mean_degree, scope, v);
    get_uint(obj, "ring_degree", net.ring_degree, scope, v);
    get_double(obj, "rewire_prob", net.rewire_prob, scope, v);
    get_double(obj, "power_law_alpha", net.power_law_alpha, scope, v);
    get_uint(obj, "min_degree", net.min_degree, scope, v);
    get_string(obj, "path", net.path, scope, v);
    get_bool(obj, "dominant_component", net.dominant_component, scope, v);
    get_uint(obj, "instances", net.instances, scope, v);

    const std::set<std::string> families{"er", "small_world", "config_power_law", "edge_list"};
    if (!families.count(net.family)) {
        v.add(scope + "family: unknown family '" + net.family + "'");
        return net;
    }
    if (net.instances < 1) v.add(scope + "instances: must be >= 1");
    if (net.family == "edge_list") {
        if (net.path.empty()) v.add(scope + "path: required for family edge_list");
        if (net.instances > 1) v.add(scope + "instances: edge_list supports a single instance");
        return net;
    }
    if (net.n < 2) v.add(scope + "n: must be >= 2");
    if (net.family == "er") {
        if (!(net.mean_degree > 0.0)) v.add(scope + "mean_degree: must be > 0");
        if (net.n >= 2 && net.mean_degree > static_cast<double>(net.n) - 1.0)
            v.add(scope + "mean_degree: must be <= n - 1");
    } else if (net.family == "small_world") {
        if (net.n < 3) v.add(scope + "n: must be >= 3 for small_world");
        if (net.ring_degree < 2 || net.ring_degree % 2 != 0)
            v.add(scope + "ring_degree: must be a positive even number");
        if (net.n >= 2 && net.ring_degree > net.n - 1)
            v.add(scope + "ring_degree: must be <= n - 1");
        if (!(net.rewire_prob >= 0.0 && net.rewire_prob <= 1.0))
            v.add(scope + "rewire_prob: must be in [0, 1]");
    } else if (net.family == "config_power_law") {
        if (!(net.power_law_alpha > 1.0)) v.add(scope + "power_law_alpha: must be > 1");
        if (net.min_degree < 1) v.add(scope + "min_degree: must be >= 1");
        if (net.n >= 2 && net.min_degree > net.n - 1)
            v.add(scope + "min_degree: must be <= n - 1");
    }
    return net;
}

GridConfig parse_grid(const nlohmann::json& obj, Violations& v) {
    GridConfig grid;
    const std::string scope = "grid.";
    check_keys(obj, scope,
               {"kind", "step", "coarse_step", "fine_step", "fine_lo", "fine_hi", "halfwidth"},
               v);
    get_string(obj, "kind", grid.kind, scope, v);
    get_double(obj, "step", grid.step, scope, v);
    get_double(obj, "coarse_step", grid.coarse_step, scope, v);
    get_double(obj, "fine_step", grid.fine_step, scope, v);
    get_double(obj, "fine_lo", grid.fine_lo, scope, v);
    get_double(obj, "fine_hi", grid.fine_hi, scope, v);
    get_double(obj, "halfwidth", grid.halfwidth, scope, v);

    if (grid.kind == "uniform") {
        if (!(grid.step > 0.0 && grid.step <= 1.0)) v.add(scope + "step: must be in (0, 1]");
    } else if (grid.kind == "refined" || grid.kind == "refined_critical") {
        if (!(grid.fine_step > 0.0 && grid.fine_step <= grid.coarse_step &&
              grid.coarse_step <= 1.0))
            v.add(scope + "steps: need 0 < fine_step <= coarse_step <= 1");
        if (grid.kind == "refined" &&
            !(grid.fine_lo >= 0.0 && grid.fine_lo < grid.fine_hi && grid.fine_hi <= 1.0))
            v.add(scope + "window: need 0 <= fine_lo < fine_hi <= 1");
        if (grid.kind == "refined_critical" && !(grid.halfwidth > 0.0))
            v.add(scope + "halfwidth: must be > 0");
    } else {
        v.add(scope + "kind: unknown kind '" + grid.kind + "'");
    }
    return grid;
}

UtilityParams parse_utility(const nlohmann::json& obj, Violations& v) {
    UtilityParams u;
    const std::string scope = "utility.";
    check_keys(obj, scope,
               {"value_per_node", "cost_per_time", "opt_cost_model", "local_cost_model",
                "constant_cost", "local_cost_constant"},
               v);
    get_double(obj, "value_per_node", u.value_per_node, scope, v);
    get_double(obj, "cost_per_time", u.cost_per_time, scope, v);
    std::string opt_model = cost_model_name(u.opt_cost_model);
    std::string local_model = cost_model_name(u.local_cost_model);
    get_string(obj, "opt_cost_model", opt_model, scope, v);
    get_string(obj, "local_cost_model", local_model, scope, v);
    get_double(obj, "constant_cost", u.constant_cost, scope, v);
    get_double(obj, "local_cost_constant", u.local_cost_constant, scope, v);

    if (!(u.value_per_node > 0.0)) v.add(scope + "value_per_node: must be > 0");
    if (!(u.cost_per_time >= 0.0)) v.add(scope + "cost_per_time: must be >= 0");
    try {
        u.opt_cost_model = cost_model_from_name(opt_model);
    } catch (const config_error& e) {
        v.add(scope + "opt_cost_model: " + e.what());
    }
    try {
        u.local_cost_model = cost_model_from_name(local_model);
    } catch (const config_error& e) {
        v.add(scope + "local_cost_model: " + e.what());
    }
    if (!(u.constant_cost > 0.0)) v.add(scope + "constant_cost: must be > 0");
    if (!(u.local_cost_constant >= 0.0)) v.add(scope + "local_cost_constant: must be >= 0");
    return u;
}

} // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
    Violations v;
    ExperimentConfig cfg;
    if (!j.is_object()) throw config_error("invalid config: top level must be a JSON object");

    check_keys(j, "",
               {"config_version", "rng_seed", "output_dir", "network", "grid", "k", "strategies",
                "trials", "trials_per_eval", "local_mass", "noise_sigma", "picture", "utility",
                "width_threshold_fraction", "m_values", "fit_input"},
               v);

    int64_t version = kConfigVersion;
    if (j.contains("config_version")) {
        if (j["config_version"].is_number_integer())
            version = j["config_version"].get<int64_t>();
        else
            v.add("config_version: expected an integer");
    } else {
        v.add("config_version: required field");
    }
    if (version != kConfigVersion)
        v.add("config_version: expected " + std::to_string(kConfigVersion) + ", got " +
              std::to_string(version));
    cfg.config_version = kConfigVersion;

    get_uint(j, "rng_seed", cfg.rng_seed, "", v);
    get_string(j, "output_dir", cfg.output_dir, "", v);
    if (cfg.output_dir.empty()) v.add("output_dir: must be non-empty");

    if (j.contains("network")) {
        if (j["network"].is_object())
            cfg.network = parse_network(j["network"], v);
        else
            v.add("network: expected an object");
    }
    if (j.contains("grid")) {
        if (j["grid"].is_object())
            cfg.grid = parse_grid(j["grid"], v);
        else
            v.add("grid: expected an object");
    }
    if (j.contains("utility")) {
        if (j["utility"].is_object())
            cfg.utility = parse_utility(j["utility"], v);
        else
            v.add("utility: expected an object");
    }

    get_uint(j, "k", cfg.k, "", v);
    if (cfg.k < 1) v.add("k: must be >= 1");

    if (j.contains("strategies")) {
        if (j["strategies"].is_array() &&
            std::all_of(j["strategies"].begin(), j["strategies"].end(),
                        [](const nlohmann::json& s) { return s.is_string(); })) {
            cfg.strategies = j["strategies"].get<std::vector<std::string>>();
        } else {
            v.add("strategies: expected an array of strings");
        }
    }
    if (cfg.strategies.empty()) v.add("strategies: must be non-empty");
    for (const std::string& name : cfg.strategies) {
        try {
            (void)strategy_from_name(name);
        } catch (const config_error& e) {
            v.add(std::string("strategies: ") + e.what());
        }
    }
    {
        std::vector<std::string> sorted = cfg.strategies;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            v.add("strategies: duplicate entries");
    }

    get_uint(j, "trials", cfg.trials, "", v);
    if (cfg.trials < 1) v.add("trials: must be >= 1");
    get_uint(j, "trials_per_eval", cfg.trials_per_eval, "", v);
    if (cfg.trials_per_eval < 1) v.add("trials_per_eval: must be >= 1");
    get_uint(j, "local_mass", cfg.local_mass, "", v);
    if (cfg.local_mass < 1) v.add("local_mass: must be >= 1");

    get_double(j, "noise_sigma", cfg.noise_sigma, "", v);
    if (!(cfg.noise_sigma >= 0.0)) v.add("noise_sigma: must be >= 0");

    get_string(j, "picture", cfg.picture, "", v);
    if (cfg.picture != "static" && cfg.picture != "dynamic")
        v.add("picture: expected 'static' or 'dynamic'");

    get_double(j, "width_threshold_fraction", cfg.width_threshold_fraction, "", v);
    if (!(cfg.width_threshold_fraction >= 0.0))
        v.add("width_threshold_fraction: must be >= 0");

    if (j.contains("m_values")) {
        if (j["m_values"].is_array() &&
            std::all_of(j["m_values"].begin(), j["m_values"].end(), [](const nlohmann::json& m) {
                if (!m.is_number_integer()) return false;
                if (!m.is_number_unsigned() && m.get<int64_t>() < 0) return false;
                return m.get<uint64_t>() <= std::numeric_limits<uint32_t>::max();
            })) {
            cfg.m_values = j["m_values"].get<std::vector<uint32_t>>();
        } else {
            v.add("m_values: expected an array of positive integers");
        }
    }
    if (cfg.m_values.empty()) v.add("m_values: must be non-empty");
    for (const uint32_t m : cfg.m_values)
        if (m < 1) v.add("m_values: entries must be >= 1");

    get_string(j, "fit_input", cfg.fit_input, "", v);

    if (!v.items.empty()) {
        std::ostringstream message;
        message << "invalid config (" << v.items.size() << " violation"
                << (v.items.size() == 1 ? "" : "s") << "):";
        for (const std::string& item : v.items) message << "\n  - " << item;
        throw config_error(message.str());
    }
    return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
    nlohmann::json j;
    j["config_version"] = c.config_version;
    j["rng_seed"] = c.rng_seed;
    j["output_dir"] = c.output_dir;
    j["network"] = {{"family", c.network.family},
                    {"n", c.network.n},
                    {"mean_degree", c.network.mean_degree},
                    {"ring_degree", c.network.ring_degree},
                    {"rewire_prob", c.network.rewire_prob},
                    {"power_law_alpha", c.network.power_law_alpha},
                    {"min_degree", c.network.min_degree},
                    {"path", c.network.path},
                    {"dominant_component", c.network.dominant_component},
                    {"instances", c.network.instances}};
    j["grid"] = {{"kind", c.grid.kind},
                 {"step", c.grid.step},
                 {"coarse_step", c.grid.coarse_step},
                 {"fine_step", c.grid.fine_step},
                 {"fine_lo", c.grid.fine_lo},
                 {"fine_hi", c.grid.fine_hi},
                 {"halfwidth", c.grid.halfwidth}};
    j["k"] = c.k;
    j["strategies"] = c.strategies;
    j["trials"] = c.trials;
    j["trials_per_eval"] = c.trials_per_eval;
    j["local_mass"] = c.local_mass;
    j["noise_sigma"] = c.noise_sigma;
    j["picture"] = c.picture;
    j["utility"] = {{"value_per_node", c.utility.value_per_node},
                    {"cost_per_time", c.utility.cost_per_time},
                    {"opt_cost_model", cost_model_name(c.utility.opt_cost_model)},
                    {"local_cost_model", cost_model_name(c.utility.local_cost_model)},
                    {"constant_cost", c.utility.constant_cost},
                    {"local_cost_constant", c.utility.local_cost_constant}};
    j["width_threshold_fraction"] = c.width_threshold_fraction;
    j["m_values"] = c.m_values;
    j["fit_input"] = c.fit_input;
    return j;
}

void apply_override(nlohmann::json& j, const std::string& assignment) {
    const size_t eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw config_error("override '" + assignment + "': expected dotted.key=value");
    const std::string key_path = assignment.substr(0, eq);
    const std::string value_text = assignment.substr(eq + 1);

    nlohmann::json value = nlohmann::json::parse(value_text, nullptr, /*allow_exceptions=*/false);
    if (value.is_discarded()) value = value_text; // bare words are strings

    nlohmann::json* node = &j;
    size_t start = 0;
    while (true) {
        const size_t dot = key_path.find('.', start);
        const std::string key = key_path.substr(start, dot - start);
        if (key.empty())
            throw config_error("override '" + assignment + "': empty key segment");
        if (dot == std::string::npos) {
            (*node)[key] = std::move(value);
            return;
        }
        node = &(*node)[key];
        if (!node->is_object() && !node->is_null())
            throw config_error("override '" + assignment + "': '" + key + "' is not an object");
        start = dot + 1;
    }
}

ExperimentConfig load_config(const std::string& path,
                             const std::vector<std::string>& overrides) {
    nlohmann::json j;
    if (path.empty()) {
        j = config_to_json(ExperimentConfig{});
    } else {
        std::string text;
        try {
            text = read_file(path);
        } catch (const data_error& e) {
            throw config_error(std::string("config file: ") + e.what());
        }
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw config_error("config file '" + path + "': " + e.what());
        }
    }
    for (const std::string& assignment : overrides) apply_override(j, assignment);
    return config_from_json(j);
}

std::vector<Strategy> parse_strategies(const std::vector<std::string>& names) {
    std::vector<Strategy> out;
    out.reserve(names.size());
    for (const std::string& name : names) out.push_back(strategy_from_name(name));
    return out;
}

} // namespace cascadelab
