#include "cascadelab/experiments.hpp"
#include "cascadelab/errors.hpp"
#include "cascadelab/influence.hpp"
#include "cascadelab/percolation.hpp"
#include "cascadelab/rng.hpp"
#include "cascadelab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cascadelab {

namespace {

void validate_grid_steps(double coarse, double fine) {
    if (!(fine > 0.0 && fine <= coarse && coarse <= 1.0))
        throw config_error("grid: need 0 < fine_step <= coarse_step <= 1");
}

std::vector<double> merge_grid(std::vector<double> points) {
    std::sort(points.begin(), points.end());
    std::vector<double> out;
    for (const double p : points) {
        const double clamped = std::clamp(p, 0.0, 1.0);
        if (out.empty() || clamped > out.back() + 1e-12) out.push_back(clamped);
    }
    return out;
}

} // namespace

PGrid PGrid::uniform(double step) {
    validate_grid_steps(step, step);
    std::vector<double> pts;
    const int64_t steps = static_cast<int64_t>(std::ceil(1.0 / step - 1e-9));
    for (int64_t j = 0; j <= steps; ++j)
        pts.push_back(std::min(1.0, static_cast<double>(j) * step));
    if (pts.back() < 1.0) pts.push_back(1.0);
    return PGrid{merge_grid(std::move(pts))};
}

PGrid PGrid::refined(double coarse_step, double fine_step, double fine_lo, double fine_hi) {
    validate_grid_steps(coarse_step, fine_step);
    if (!(fine_lo >= 0.0 && fine_lo < fine_hi && fine_hi <= 1.0))
        throw config_error("grid: need 0 <= fine_lo < fine_hi <= 1");
    std::vector<double> pts;
    const int64_t coarse_steps = static_cast<int64_t>(std::ceil(1.0 / coarse_step - 1e-9));
    for (int64_t j = 0; j <= coarse_steps; ++j) {
        const double p = std::min(1.0, static_cast<double>(j) * coarse_step);
        if (p < fine_lo - 1e-12 || p > fine_hi + 1e-12) pts.push_back(p);
    }
    if (pts.empty() || pts.back() < 1.0) pts.push_back(1.0);
    const int64_t fine_steps =
        static_cast<int64_t>(std::floor((fine_hi - fine_lo) / fine_step + 1e-9));
    for (int64_t j = 0; j <= fine_steps; ++j)
        pts.push_back(fine_lo + static_cast<double>(j) * fine_step);
    pts.push_back(fine_hi);
    return PGrid{merge_grid(std::move(pts))};
}

PGrid PGrid::refined_around_critical(const Graph& g, double coarse_step, double fine_step,
                                     double halfwidth) {
    const std::vector<uint32_t> degs = g.degree_sequence();
    const double pc = critical_point_from_degrees(degs);
    const double lo = std::max(0.0, pc - halfwidth);
    const double hi = std::min(1.0, pc + halfwidth);
    return refined(coarse_step, fine_step, lo, hi);
}

bool SweepResult::has_strategy(Strategy s) const {
    return std::find(options.strategies.begin(), options.strategies.end(), s) !=
           options.strategies.end();
}

const SweepRow& SweepResult::row(uint32_t grid_index, Strategy s) const {
    const size_t per_p = options.strategies.size();
    for (size_t j = 0; j < per_p; ++j) {
        const SweepRow& r = rows[grid_index * per_p + j];
        if (r.strategy == s) return r;
    }
    throw config_error(std::string("sweep does not include strategy ") + strategy_name(s));
}

std::vector<double> SweepResult::medians(Strategy s) const {
    std::vector<double> out;
    out.reserve(grid.size());
    for (uint32_t i = 0; i < grid.size(); ++i) out.push_back(row(i, s).median);
    return out;
}

std::vector<double> SweepResult::marginal_gain() const {
    const std::vector<double> opt = medians(Strategy::hill_climb);
    const std::vector<double> rnd = medians(Strategy::random);
    std::vector<double> gain(opt.size());
    for (size_t i = 0; i < opt.size(); ++i) gain[i] = opt[i] - rnd[i];
    return gain;
}

SweepResult sweep(const Graph& g, const PGrid& grid, const SweepOptions& options,
                  const NetworkDescriptor& network) {
    if (grid.points.empty()) throw config_error("sweep: empty grid");
    if (options.strategies.empty()) throw config_error("sweep: no strategies requested");
    if (options.trials < 1) throw config_error("sweep: trials must be >= 1");

    SweepResult result;
    result.grid = grid.points;
    result.network = network;
    result.options = options;
    result.rows.reserve(grid.points.size() * options.strategies.size());

    const uint64_t seed = options.rng_seed;
    // one evaluation stream for every (p, strategy): differences between
    // strategies and neighbouring p values are estimated on common coins
    const uint64_t eval_seed = rng::derive_stream(seed, rng::tags::kSweepEval, 0);
    const uint64_t noise_seed = rng::derive_stream(seed, rng::tags::kEdgeNoise, 0);

    for (uint32_t i = 0; i < result.grid.size(); ++i) {
        const double p = result.grid[i];

        // quenched noisy probabilities are a property of the (network, p) pair,
        // shared by selection and evaluation
        const Graph* eval_graph = &g;
        Graph noisy;
        if (options.noise_sigma > 0.0) {
            noisy = sample_edge_probabilities(g, p, options.noise_sigma, noise_seed);
            eval_graph = &noisy;
        }

        CascadeParams select_params;
        select_params.p = p;
        select_params.picture = Picture::static_percolation; // selection always static
        CascadeParams eval_params;
        eval_params.p = p;
        eval_params.picture = options.picture;
        eval_params.rng_seed = eval_seed;

        for (size_t si = 0; si < options.strategies.size(); ++si) {
            const Strategy s = options.strategies[si];
            const uint64_t select_seed = rng::derive_stream(
                seed, rng::tags::kSweepSelect, (static_cast<uint64_t>(i) << 8) | si);

            SeedSelection sel;
            switch (s) {
            case Strategy::random:
                sel = select_random(*eval_graph, options.k, select_seed);
                break;
            case Strategy::hill_climb:
                sel = select_hill_climb(*eval_graph, options.k, select_params,
                                        options.trials_per_eval, select_seed);
                break;
            case Strategy::local:
                sel = select_local(*eval_graph, options.k, options.local_mass, select_params,
                                   options.trials_per_eval, select_seed);
                break;
            }

            const InfluenceEstimate est =
                estimate(*eval_graph, sel.seeds, eval_params, options.trials);
            SweepRow row;
            row.p = p;
            row.strategy = s;
            row.median = est.median;
            row.mean = est.mean;
            row.std_error = est.std_error;
            row.cost_steps = sel.cost_steps;
            result.rows.push_back(row);
        }
    }
    return result;
}

double measure_above_threshold(std::span<const double> ps, std::span<const double> values,
                               double threshold, bool strict) {
    if (ps.size() != values.size()) throw config_error("measure: size mismatch");
    if (ps.size() < 2) throw config_error("measure: need at least 2 grid points");
    auto above = [&](double v) { return strict ? v > threshold : v >= threshold; };
    double total = 0.0;
    for (size_t i = 0; i + 1 < ps.size(); ++i) {
        const double x0 = ps[i], x1 = ps[i + 1];
        const double y0 = values[i], y1 = values[i + 1];
        const double len = x1 - x0;
        if (len <= 0.0) throw config_error("measure: grid not strictly increasing");
        const bool a0 = above(y0), a1 = above(y1);
        if (a0 && a1) {
            total += len;
        } else if (a0 != a1) {
            // single crossing of the linear interpolant
            const double t = (threshold - y0) / (y1 - y0);
            total += a0 ? len * t : len * (1.0 - t);
        }
    }
    return total;
}

double optimization_region_width(const SweepResult& sweep, double threshold_fraction) {
    if (!(threshold_fraction >= 0.0)) throw config_error("width: threshold must be >= 0");
    const std::vector<double> gain = sweep.marginal_gain();
    const double threshold = threshold_fraction * sweep.network.n;
    return measure_above_threshold(sweep.grid, gain, threshold, /*strict=*/false);
}

WidthFit fit_power_law(std::span<const double> sizes, std::span<const double> widths) {
    if (sizes.size() != widths.size()) throw config_error("fit: size mismatch");
    std::vector<double> lx, ly;
    uint32_t dropped = 0;
    for (size_t i = 0; i < sizes.size(); ++i) {
        if (!(sizes[i] > 0.0)) throw config_error("fit: sizes must be positive");
        if (widths[i] > 0.0) {
            lx.push_back(std::log(sizes[i]));
            ly.push_back(std::log(widths[i]));
        } else {
            ++dropped; // zero-width points carry no log-log information
        }
    }
    if (lx.size() < 3)
        throw config_error("fit: need at least 3 positive-width points (have " +
                           std::to_string(lx.size()) + ")");
    const LinearFit lf = ols(lx, ly);
    WidthFit fit;
    fit.exponent = -lf.slope;
    fit.amplitude = std::exp(lf.intercept);
    fit.exponent_se = lf.slope_se;
    fit.amplitude_se = fit.amplitude * lf.intercept_se; // delta method
    fit.residual_rms = lf.residual_rms;
    fit.points_used = lf.points;
    fit.points_dropped = dropped;
    return fit;
}

const char* cost_model_name(CostModel m) {
    switch (m) {
    case CostModel::nlogn: return "nlogn";
    case CostModel::linear: return "linear";
    case CostModel::constant: return "constant";
    case CostModel::measured_steps: return "measured_steps";
    }
    return "?";
}

CostModel cost_model_from_name(const std::string& name) {
    if (name == "nlogn") return CostModel::nlogn;
    if (name == "linear") return CostModel::linear;
    if (name == "constant") return CostModel::constant;
    if (name == "measured_steps") return CostModel::measured_steps;
    throw config_error("unknown cost model '" + name +
                       "' (expected nlogn | linear | constant | measured_steps)");
}

UtilityCondition utility_condition(double opt, double rand, double T, double C, double v) {
    if (!(v > 0.0)) throw config_error("utility: value_per_node must be > 0");
    if (!(C >= 0.0)) throw config_error("utility: cost_per_time must be >= 0");
    if (!(T > 1.0)) throw config_error("utility: degenerate cost model (need T > 1)");
    UtilityCondition r;
    r.lhs = (opt - rand) / (T - 1.0);
    r.rhs = C / v;
    r.optimize_worthwhile = r.lhs > r.rhs;
    r.u_opt = v * opt - C * T;
    r.u_rand = v * rand - C;
    return r;
}

double resolve_cost_T(Strategy s, const UtilityParams& params, uint32_t n, uint32_t k, uint32_t M,
                      uint64_t measured_cost_steps) {
    if (s == Strategy::random) return 1.0; // the baseline is charged one time unit
    const CostModel model =
        s == Strategy::hill_climb ? params.opt_cost_model : params.local_cost_model;
    switch (model) {
    case CostModel::nlogn:
        return static_cast<double>(n) * std::log(static_cast<double>(n));
    case CostModel::linear:
        return static_cast<double>(n);
    case CostModel::constant:
        if (s == Strategy::local)
            return params.local_cost_constant > 0.0
                       ? params.local_cost_constant
                       : static_cast<double>(k) * static_cast<double>(M);
        return params.constant_cost;
    case CostModel::measured_steps:
        return static_cast<double>(measured_cost_steps);
    }
    throw config_error("unknown cost model");
}

double row_utility(const SweepRow& row, const UtilityParams& params, const SweepResult& sweep) {
    const double T = resolve_cost_T(row.strategy, params, sweep.network.n, sweep.options.k,
                                    sweep.options.local_mass, row.cost_steps);
    return params.value_per_node * row.median - params.cost_per_time * T;
}

double positive_utility_width(const SweepResult& sweep, const UtilityParams& params) {
    if (!(params.value_per_node > 0.0)) throw config_error("utility: value_per_node must be > 0");
    const std::vector<double> opt = sweep.medians(Strategy::hill_climb);
    const std::vector<double> rnd = sweep.medians(Strategy::random);
    std::vector<double> lhs(opt.size());
    for (uint32_t i = 0; i < opt.size(); ++i) {
        const double T =
            resolve_cost_T(Strategy::hill_climb, params, sweep.network.n, sweep.options.k,
                           sweep.options.local_mass,
                           sweep.row(i, Strategy::hill_climb).cost_steps);
        if (!(T > 1.0)) throw config_error("utility: degenerate cost model (need T > 1)");
        lhs[i] = (opt[i] - rnd[i]) / (T - 1.0);
    }
    return measure_above_threshold(sweep.grid, lhs, params.cost_per_time / params.value_per_node,
                                   /*strict=*/true);
}

std::map<Strategy, double> expected_added_utility_over_prior(const SweepResult& sweep,
                                                             const UtilityParams& params) {
    if (sweep.grid.front() > 1e-12 || sweep.grid.back() < 1.0 - 1e-12)
        throw config_error("expected utility: grid must span [0,1]");
    if (!(params.value_per_node > 0.0)) throw config_error("utility: value_per_node must be > 0");

    std::map<Strategy, double> out;
    const double vn = params.value_per_node * sweep.network.n;
    for (const Strategy s : sweep.options.strategies) {
        if (s == Strategy::random) continue;
        std::vector<double> integrand(sweep.grid.size());
        for (uint32_t i = 0; i < sweep.grid.size(); ++i) {
            const double u_s = row_utility(sweep.row(i, s), params, sweep);
            const double u_rand = row_utility(sweep.row(i, Strategy::random), params, sweep);
            integrand[i] = (u_s - u_rand) / vn;
        }
        out[s] = trapezoid_integral(sweep.grid, integrand);
    }
    return out;
}

MRatioResult m_robustness_ratio(const Graph& g, std::span<const uint32_t> M_values,
                                const PGrid& grid, const SweepOptions& options) {
    if (M_values.empty()) throw config_error("mratio: need at least one M value");
    for (const uint32_t M : M_values)
        if (M < 1) throw config_error("mratio: M values must be >= 1");
    if (grid.points.size() < 2) throw config_error("mratio: grid needs at least 2 points");

    const uint64_t seed = options.rng_seed;
    const uint64_t eval_seed = rng::derive_stream(seed, rng::tags::kSweepEval, 0);

    MRatioResult result;
    result.grid = grid.points;
    result.hill_medians.reserve(grid.points.size());
    for (const uint32_t M : M_values) result.local_medians_by_mass[M] = {};

    for (uint32_t i = 0; i < grid.points.size(); ++i) {
        const double p = grid.points[i];
        CascadeParams params;
        params.p = p;
        params.picture = Picture::static_percolation;

        CascadeParams eval_params = params;
        eval_params.rng_seed = eval_seed;

        const uint64_t hill_seed =
            rng::derive_stream(seed, rng::tags::kSweepSelect, (static_cast<uint64_t>(i) << 8) | 1);
        const SeedSelection hill =
            select_hill_climb(g, options.k, params, options.trials_per_eval, hill_seed);
        result.hill_medians.push_back(estimate(g, hill.seeds, eval_params, options.trials).median);

        // same selection seed for every M: identical roots, so the ratio
        // isolates the effect of the mass bound
        const uint64_t local_seed =
            rng::derive_stream(seed, rng::tags::kSweepSelect, (static_cast<uint64_t>(i) << 8) | 2);
        for (const uint32_t M : M_values) {
            const SeedSelection local =
                select_local(g, options.k, M, params, options.trials_per_eval, local_seed);
            result.local_medians_by_mass[M].push_back(
                estimate(g, local.seeds, eval_params, options.trials).median);
        }
    }

    const double hill_integral = trapezoid_integral(result.grid, result.hill_medians);
    if (!(hill_integral > 0.0)) throw config_error("mratio: hill-climb integral is zero");
    for (const uint32_t M : M_values)
        result.ratio_by_mass[M] =
            trapezoid_integral(result.grid, result.local_medians_by_mass[M]) / hill_integral;
    return result;
}

double trapezoid_integral(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw config_error("trapezoid: size mismatch");
    if (xs.size() < 2) throw config_error("trapezoid: need at least 2 points");
    double total = 0.0;
    for (size_t i = 0; i + 1 < xs.size(); ++i)
        total += (xs[i + 1] - xs[i]) * (ys[i] + ys[i + 1]) * 0.5;
    return total;
}

} // namespace cascadelab
