#pragma once

// Parameter sweeps over the contagion probability and the derived quantities:
// marginal-gain curves, optimization-region width, power-law width fits,
// utility/worthwhileness analysis, prior-averaged added utility, and
// sub-network-mass robustness ratios.

#include "cascadelab/cascade.hpp"
#include "cascadelab/graph.hpp"
#include "cascadelab/optimize.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace cascadelab {

// Probability grid over [0,1]; strictly increasing, endpoints included.
struct PGrid {
    std::vector<double> points;

    static PGrid uniform(double step);
    // fine_step spacing on [fine_lo, fine_hi], coarse_step elsewhere
    static PGrid refined(double coarse_step, double fine_step, double fine_lo, double fine_hi);
    // refined grid with the fine window centered on the graph's critical point
    static PGrid refined_around_critical(const Graph& g, double coarse_step = 0.025,
                                         double fine_step = 0.0025, double halfwidth = 0.1);
};

struct NetworkDescriptor {
    std::string family; // "er" | "small_world" | "config_power_law" | "edge_list"
    uint32_t n = 0;
    uint32_t edge_count = 0;
    uint64_t seed = 0; // generator seed (0 for ingested graphs)
};

struct SweepRow {
    double p = 0.0;
    Strategy strategy = Strategy::random;
    double median = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
    uint64_t cost_steps = 0;
};

struct SweepOptions {
    uint32_t k = 3;
    std::vector<Strategy> strategies{Strategy::random, Strategy::hill_climb};
    uint64_t trials = 5000;          // evaluation trials per (p, strategy)
    uint32_t trials_per_eval = 200;  // selection-time Monte-Carlo budget
    uint32_t local_mass = 100;       // M
    double noise_sigma = 0.0;
    Picture picture = Picture::static_percolation;
    uint64_t rng_seed = 0;
};

struct SweepResult {
    std::vector<double> grid;
    std::vector<SweepRow> rows; // grouped by p, in strategy order
    NetworkDescriptor network;
    SweepOptions options;

    bool has_strategy(Strategy s) const;
    // medians aligned with grid; throws if the strategy wasn't swept
    std::vector<double> medians(Strategy s) const;
    const SweepRow& row(uint32_t grid_index, Strategy s) const;
    // hill_climb median - random median, aligned with grid
    std::vector<double> marginal_gain() const;
};

SweepResult sweep(const Graph& g, const PGrid& grid, const SweepOptions& options,
                  const NetworkDescriptor& network);

// Lebesgue measure of {p : interpolated value >= (>) threshold}, by linear
// interpolation between grid points.
double measure_above_threshold(std::span<const double> ps, std::span<const double> values,
                               double threshold, bool strict);

// Measure of {p : marginal_gain(p) >= threshold_fraction * n}.
double optimization_region_width(const SweepResult& sweep, double threshold_fraction = 0.01);

// ---- power-law width fit ----

struct WidthFit {
    double amplitude = 0.0;     // A
    double exponent = 0.0;      // a  (width = A * size^-a)
    double amplitude_se = 0.0;
    double exponent_se = 0.0;
    double residual_rms = 0.0;  // on the log-log scale
    uint32_t points_used = 0;
    uint32_t points_dropped = 0; // non-positive widths excluded
};

WidthFit fit_power_law(std::span<const double> sizes, std::span<const double> widths);

// ---- utility analysis ----

enum class CostModel { nlogn, linear, constant, measured_steps };

const char* cost_model_name(CostModel m);
CostModel cost_model_from_name(const std::string& name);

struct UtilityParams {
    double value_per_node = 1.0;  // v
    double cost_per_time = 0.0;   // C
    CostModel opt_cost_model = CostModel::nlogn;     // hill-climb T(N)
    CostModel local_cost_model = CostModel::constant; // local T
    double constant_cost = 1.0;       // T when opt_cost_model == constant
    double local_cost_constant = 0.0; // T for local constant model; 0 = k*M
};

struct UtilityCondition {
    bool optimize_worthwhile = false;
    double lhs = 0.0; // (opt - rand) / (T - 1)
    double rhs = 0.0; // C / v
    double u_opt = 0.0;
    double u_rand = 0.0;
};

// Direct evaluation of the worthwhileness inequality; requires T > 1.
UtilityCondition utility_condition(double opt, double rand, double T, double C, double v);

// Abstract running time charged to a strategy's selection at network size n.
double resolve_cost_T(Strategy s, const UtilityParams& params, uint32_t n, uint32_t k, uint32_t M,
                      uint64_t measured_cost_steps);

// Per-row utility U = v * median - C * T  (random: T = 1).
double row_utility(const SweepRow& row, const UtilityParams& params, const SweepResult& sweep);

// Measure of {p : (opt(p) - rand(p)) / (T - 1) > C/v} with T from the
// opt cost model (strict inequality).
double positive_utility_width(const SweepResult& sweep, const UtilityParams& params);

// E_p~uniform[ (U_s(p) - U_rand(p)) / (v n) ] per non-random strategy;
// trapezoidal integration over the grid, which must span [0,1].
std::map<Strategy, double> expected_added_utility_over_prior(const SweepResult& sweep,
                                                             const UtilityParams& params);

// ---- sub-network mass robustness ----

struct MRatioResult {
    std::map<uint32_t, double> ratio_by_mass; // M -> integral(local_M)/integral(hill_climb)
    std::vector<double> grid;
    std::vector<double> hill_medians;
    std::map<uint32_t, std::vector<double>> local_medians_by_mass;
};

MRatioResult m_robustness_ratio(const Graph& g, std::span<const uint32_t> M_values,
                                const PGrid& grid, const SweepOptions& options);

double trapezoid_integral(std::span<const double> xs, std::span<const double> ys);

} // namespace cascadelab
