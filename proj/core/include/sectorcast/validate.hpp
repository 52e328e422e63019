#pragma once

#include "sectorcast/dataset.hpp"
#include "sectorcast/regress.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace sectorcast {

struct ValidationReport {
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    // Transformed-scale quantities.
    double train_rmse = 0.0;
    double msetr = 0.0;
    double mspe = 0.0;
    std::vector<double> per_fold_mse;
    // Configuration.
    std::size_t k = 10;
    std::size_t repeats = 5;
    std::uint64_t seed = 0;
};

namespace validate {

double rmse(std::span<const double> observed, std::span<const double> predicted);
double mape(std::span<const double> observed, std::span<const double> predicted);
// sqrt((1/N) sum (y - yhat)^2 / sum yhat^2) * 100, N in the numerator only.
double rrmse(std::span<const double> observed, std::span<const double> predicted);
double r_squared(std::span<const double> observed, std::span<const double> predicted);
double adj_r_squared(double r2, std::size_t n, std::size_t k);

// Repeated k-fold CV on the scaled train dataset: shuffled indices dealt
// round-robin into folds, per-fold MSE on the held-out fold, MSPE = mean
// over all k * repeats folds, MSETr from the full-data fit.
ValidationReport kfold_cv(const Dataset& scaled_train, const ModelSpec& spec,
                          std::size_t k, std::size_t repeats, std::uint64_t seed);

} // namespace validate
} // namespace sectorcast
