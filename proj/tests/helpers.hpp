#pragma once

#include "sectorcast/dataset.hpp"
#include "sectorcast/johnson.hpp"
#include "sectorcast/regress.hpp"
#include "sectorcast/stats.hpp"

#include <array>
#include <cstdio>
#include <string>
#include <vector>

namespace testutil {

using namespace sectorcast;

// ISO dates for consecutive Mondays starting 2017-01-02.
std::string week_date(std::size_t index);

// Synthetic weekly dataset whose transformed response is a known linear
// function of the standardized indicators plus N(0, sigma^2) noise.
struct SyntheticSpec {
    std::size_t n = 156;
    double intercept = 0.05;
    std::vector<std::pair<TermId, double>> coefficients;
    JohnsonSbParams transform{0.4091, 1.2208, 711.5838, 1082.963, {}};
    double sigma = 0.0;
    std::uint64_t seed = 42;
};

Dataset make_synthetic(const SyntheticSpec& spec);

// Raw indicator draws only (correlated columns are the caller's job).
Dataset make_random_dataset(std::size_t n, std::uint64_t seed);

std::string write_temp_csv(const Dataset& data, const std::string& stem);

} // namespace testutil
