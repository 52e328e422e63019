#include "sectorcast/validate.hpp"
#include "sectorcast/errors.hpp"
#include "sectorcast/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sectorcast::validate {

namespace {

void check_lengths(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw LengthMismatch("metric: sequence lengths differ");
    if (a.empty()) throw EmptyInput("metric: empty sequences");
}

} // namespace

double rmse(std::span<const double> observed, std::span<const double> predicted) {
    check_lengths(observed, predicted);
    double ss = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double d = observed[i] - predicted[i];
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(observed.size()));
}

double mape(std::span<const double> observed, std::span<const double> predicted) {
    check_lengths(observed, predicted);
    double acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (observed[i] == 0.0)
            throw ZeroObserved("mape: observed value is zero at index " +
                               std::to_string(i));
        acc += std::fabs(observed[i] - predicted[i]) / std::fabs(observed[i]);
    }
    return acc / static_cast<double>(observed.size()) * 100.0;
}

double rrmse(std::span<const double> observed, std::span<const double> predicted) {
    check_lengths(observed, predicted);
    double ss = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double d = observed[i] - predicted[i];
        ss += d * d;
        norm += predicted[i] * predicted[i];
    }
    if (norm == 0.0)
        throw ZeroPredictedNorm("rrmse: predicted values are all zero");
    return std::sqrt(ss / static_cast<double>(observed.size()) / norm) * 100.0;
}

double r_squared(std::span<const double> observed,
                 std::span<const double> predicted) {
    check_lengths(observed, predicted);
    const double ybar = stats::mean(observed);
    double sse = 0.0, sst = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        sse += (observed[i] - predicted[i]) * (observed[i] - predicted[i]);
        sst += (observed[i] - ybar) * (observed[i] - ybar);
    }
    if (sst == 0.0) throw ZeroTotalVariance("r_squared: constant observed values");
    return 1.0 - sse / sst;
}

double adj_r_squared(double r2, std::size_t n, std::size_t k) {
    if (n <= k + 1)
        throw DegreesOfFreedomExhausted("adj_r_squared: need n > k + 1");
    return 1.0 - (1.0 - r2) * static_cast<double>(n - 1) /
                     static_cast<double>(n - k - 1);
}

ValidationReport kfold_cv(const Dataset& scaled_train, const ModelSpec& spec,
                          std::size_t k, std::size_t repeats,
                          std::uint64_t seed) {
    const std::size_t n = scaled_train.size();
    if (k < 2) throw InputError("kfold_cv: k must be >= 2");
    if (k > n) throw FoldTooSmall("kfold_cv: more folds than rows");
    const std::size_t min_fold = n / k;
    if (n - min_fold <= spec.size() + 1)
        throw FoldTooSmall("kfold_cv: training folds leave n <= n_params");

    const auto x10 = regress::indicator_matrix(scaled_train);
    const auto y = regress::response_vector(scaled_train);
    const auto X = regress::build_design(x10, spec);

    ValidationReport report;
    report.k = k;
    report.repeats = repeats;
    report.seed = seed;

    for (std::size_t rep = 0; rep < repeats; ++rep) {
        const auto order = stats::shuffled_indices(n, seed + rep);
        // Round-robin deal: fold sizes differ by at most one.
        std::vector<std::size_t> fold_of(n);
        for (std::size_t i = 0; i < n; ++i) fold_of[order[i]] = i % k;

        for (std::size_t f = 0; f < k; ++f) {
            std::vector<Eigen::Index> train_idx, test_idx;
            for (std::size_t i = 0; i < n; ++i)
                (fold_of[i] == f ? test_idx : train_idx)
                    .push_back(static_cast<Eigen::Index>(i));

            Eigen::MatrixXd Xtr(train_idx.size(), X.cols());
            Eigen::VectorXd ytr(train_idx.size());
            for (std::size_t r = 0; r < train_idx.size(); ++r) {
                Xtr.row(static_cast<Eigen::Index>(r)) = X.row(train_idx[r]);
                ytr(static_cast<Eigen::Index>(r)) = y(train_idx[r]);
            }
            const auto fit = regress::fit_ols(Xtr, ytr);

            double sse = 0.0;
            for (auto i : test_idx) {
                const double pred = X.row(i) * fit.coef;
                sse += (y(i) - pred) * (y(i) - pred);
            }
            report.per_fold_mse.push_back(sse /
                                          static_cast<double>(test_idx.size()));
        }
    }

    double acc = 0.0;
    for (double v : report.per_fold_mse) acc += v;
    report.mspe = acc / static_cast<double>(report.per_fold_mse.size());

    const auto full = regress::fit_ols(X, y);
    report.msetr = full.residuals.squaredNorm() / static_cast<double>(n);
    report.train_rmse = std::sqrt(report.msetr);
    report.r_squared = full.r_squared;
    report.adj_r_squared = full.adj_r_squared;
    return report;
}

} // namespace sectorcast::validate
