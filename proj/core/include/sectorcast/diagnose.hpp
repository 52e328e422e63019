#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sectorcast {

struct FittedModel;

struct NormalityResult {
    std::string test_name;
    double statistic = 0.0;
    double p_value = 0.0;
    std::size_t n = 0;
};

struct DiagnosticsReport {
    double mean_residual = 0.0;
    double sum_residual = 0.0;
    NormalityResult shapiro;
    NormalityResult anderson;
    std::vector<std::pair<double, double>> qq_points; // (theoretical, sample)
    std::vector<std::pair<double, double>> residual_vs_fitted;
    std::vector<double> studentized_residuals;
};

namespace diagnose {

// Royston AS R94 approximation, valid for 3 <= n <= 5000.
NormalityResult shapiro_wilk(std::span<const double> sample);

// A^2 with the estimated-parameters correction (1 + 0.75/n + 2.25/n^2)
// and the standard case-3 piecewise p-value formula.
NormalityResult anderson_darling(std::span<const double> sample);

// (theoretical, empirical) pairs at plotting positions (i - 3/8)/(n + 1/4).
std::vector<std::pair<double, double>> qq_points(std::span<const double> sample);

DiagnosticsReport residual_diagnostics(const FittedModel& model);

} // namespace diagnose
} // namespace sectorcast
