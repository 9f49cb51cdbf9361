#pragma once

// Small statistics toolbox: chi-square tests (goodness-of-fit against an
// exact pmf, and two-sample homogeneity) and ordinary least squares.

#include <cstdint>
#include <span>

namespace cascadelab {

// Upper-tail probability P(X >= x) for X ~ chi-square(df).
double chi_square_sf(double x, double df);

// Regularized incomplete gamma functions (exposed for tests).
double gamma_p(double a, double x); // lower
double gamma_q(double a, double x); // upper

struct ChiSquareResult {
    double statistic = 0.0;
    double df = 0.0;
    double p_value = 1.0;
    uint32_t bins_used = 0; // after pooling
};

// Goodness-of-fit of observed counts against expected probabilities
// (expected[i] * trials expected count in bin i). Adjacent bins are pooled
// until every expected count is >= min_expected.
ChiSquareResult chi_square_gof(std::span<const uint64_t> observed,
                               std::span<const double> expected_probs, uint64_t trials,
                               double min_expected = 5.0);

// Two-sample homogeneity test for two histograms over the same bins.
// Adjacent bins pooled until each combined count is >= min_expected.
ChiSquareResult chi_square_two_sample(std::span<const uint64_t> a, std::span<const uint64_t> b,
                                      double min_expected = 10.0);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    double intercept_se = 0.0;
    double residual_rms = 0.0;
    uint32_t points = 0;
};

// OLS y = intercept + slope * x; standard errors from the residual variance
// (s^2 = SSR / (m - 2)). Requires >= 2 points (>= 3 for finite SEs).
LinearFit ols(std::span<const double> x, std::span<const double> y);

} // namespace cascadelab
