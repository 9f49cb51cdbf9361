#include "cascadelab/stats.hpp"
#include "cascadelab/errors.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace cascadelab {

namespace {

// lower regularized incomplete gamma by series (x < a + 1)
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 10000; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// upper regularized incomplete gamma by Lentz continued fraction (x >= a + 1)
double gamma_q_cf(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw config_error("gamma_p: need a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw config_error("gamma_q: need a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi_square_sf(double x, double df) {
    if (!(df > 0.0)) throw config_error("chi_square_sf: df must be > 0");
    if (x <= 0.0) return 1.0;
    return gamma_q(df / 2.0, x / 2.0);
}

namespace {

struct PooledBin {
    double observed_a;
    double observed_b_or_expected;
};

} // namespace

ChiSquareResult chi_square_gof(std::span<const uint64_t> observed,
                               std::span<const double> expected_probs, uint64_t trials,
                               double min_expected) {
    if (observed.size() != expected_probs.size())
        throw config_error("chi_square_gof: observed/expected size mismatch");
    if (trials == 0) throw config_error("chi_square_gof: trials must be > 0");

    // pool adjacent bins until expected >= min_expected
    std::vector<double> obs_pooled, exp_pooled;
    double o_acc = 0.0, e_acc = 0.0;
    for (size_t i = 0; i < observed.size(); ++i) {
        o_acc += static_cast<double>(observed[i]);
        e_acc += expected_probs[i] * static_cast<double>(trials);
        if (e_acc >= min_expected) {
            obs_pooled.push_back(o_acc);
            exp_pooled.push_back(e_acc);
            o_acc = e_acc = 0.0;
        }
    }
    if (o_acc > 0.0 || e_acc > 0.0) {
        if (!exp_pooled.empty()) {
            obs_pooled.back() += o_acc;
            exp_pooled.back() += e_acc;
        } else {
            obs_pooled.push_back(o_acc);
            exp_pooled.push_back(e_acc);
        }
    }
    if (obs_pooled.size() < 2)
        throw config_error("chi_square_gof: fewer than 2 bins after pooling");

    double stat = 0.0;
    for (size_t i = 0; i < obs_pooled.size(); ++i) {
        const double diff = obs_pooled[i] - exp_pooled[i];
        if (exp_pooled[i] > 0.0) stat += diff * diff / exp_pooled[i];
    }
    ChiSquareResult r;
    r.statistic = stat;
    r.df = static_cast<double>(obs_pooled.size() - 1);
    r.p_value = chi_square_sf(stat, r.df);
    r.bins_used = static_cast<uint32_t>(obs_pooled.size());
    return r;
}

ChiSquareResult chi_square_two_sample(std::span<const uint64_t> a, std::span<const uint64_t> b,
                                      double min_expected) {
    if (a.size() != b.size()) throw config_error("chi_square_two_sample: size mismatch");
    double total_a = 0.0, total_b = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        total_a += static_cast<double>(a[i]);
        total_b += static_cast<double>(b[i]);
    }
    if (total_a == 0.0 || total_b == 0.0)
        throw config_error("chi_square_two_sample: empty sample");

    // pool adjacent bins until combined count >= min_expected
    std::vector<double> pa, pb;
    double a_acc = 0.0, b_acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        a_acc += static_cast<double>(a[i]);
        b_acc += static_cast<double>(b[i]);
        if (a_acc + b_acc >= min_expected) {
            pa.push_back(a_acc);
            pb.push_back(b_acc);
            a_acc = b_acc = 0.0;
        }
    }
    if (a_acc + b_acc > 0.0) {
        if (!pa.empty()) {
            pa.back() += a_acc;
            pb.back() += b_acc;
        } else {
            pa.push_back(a_acc);
            pb.push_back(b_acc);
        }
    }
    if (pa.size() < 2) throw config_error("chi_square_two_sample: fewer than 2 bins after pooling");

    // homogeneity statistic: expected share per bin from the pooled totals
    const double total = total_a + total_b;
    double stat = 0.0;
    for (size_t i = 0; i < pa.size(); ++i) {
        const double combined = pa[i] + pb[i];
        const double ea = combined * total_a / total;
        const double eb = combined * total_b / total;
        if (ea > 0.0) stat += (pa[i] - ea) * (pa[i] - ea) / ea;
        if (eb > 0.0) stat += (pb[i] - eb) * (pb[i] - eb) / eb;
    }
    ChiSquareResult r;
    r.statistic = stat;
    r.df = static_cast<double>(pa.size() - 1);
    r.p_value = chi_square_sf(stat, r.df);
    r.bins_used = static_cast<uint32_t>(pa.size());
    return r;
}

LinearFit ols(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw config_error("ols: size mismatch");
    const size_t m = x.size();
    if (m < 2) throw config_error("ols: need >= 2 points");

    double sx = 0.0, sy = 0.0;
    for (size_t i = 0; i < m; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < m; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw config_error("ols: degenerate x values");

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.points = static_cast<uint32_t>(m);

    double ssr = 0.0;
    for (size_t i = 0; i < m; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ssr += r * r;
    }
    fit.residual_rms = std::sqrt(ssr / m);
    if (m > 2) {
        const double s2 = ssr / static_cast<double>(m - 2);
        fit.slope_se = std::sqrt(s2 / sxx);
        fit.intercept_se = std::sqrt(s2 * (1.0 / m + mx * mx / sxx));
    } else {
        fit.slope_se = fit.intercept_se = std::numeric_limits<double>::infinity();
    }
    return fit;
}

} // namespace cascadelab
