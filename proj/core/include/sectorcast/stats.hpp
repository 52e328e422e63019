#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sectorcast::stats {

double mean(std::span<const double> v);
// Sample (n-1) variance / standard deviation.
double variance(std::span<const double> v);
double stddev(std::span<const double> v);

// Pearson correlation with sample moments.
double pearson(std::span<const double> a, std::span<const double> b);

// Linear-interpolation quantile of a *sorted* sample, q in [0,1]
// (h = (n-1)q convention).
double quantile_sorted(std::span<const double> sorted, double q);

// Standard normal CDF and its inverse (Acklam rational approximation
// polished with one Halley step; |err| < 1e-15 over the open unit interval).
double norm_cdf(double z);
double norm_quantile(double p);

// Regularized incomplete beta I_x(a, b) via Lentz continued fractions.
double incbeta(double a, double b, double x);

// Two-sided p-value of a t statistic with df degrees of freedom.
double t_two_sided_p(double t, double df);

// Deterministic 64-bit generator helpers. std::mt19937_64 is fully
// specified by the standard; the bounded draw and shuffle below avoid
// the implementation-defined distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next_u64();
    // Uniform integer in [0, bound), bound > 0.
    std::uint64_t next_below(std::uint64_t bound);
    // Uniform double in [0, 1).
    double next_unit();
    // Standard normal via Box-Muller (stateless per call pair).
    double next_normal();

private:
    std::uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed);

} // namespace sectorcast::stats
