#include "helpers.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>

namespace testutil {

std::string week_date(std::size_t index) {
    using namespace std::chrono;
    const sys_days start = sys_days{2017y / January / 2};
    const year_month_day ymd{start + days{7 * static_cast<int>(index)}};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()));
    return buf;
}

Dataset make_random_dataset(std::size_t n, std::uint64_t seed) {
    stats::Rng rng(seed);
    Dataset data;
    data.provenance = "synthetic";
    for (std::size_t r = 0; r < n; ++r) {
        ObservationRow row;
        row.week_start = week_date(r);
        for (int k = 0; k < kNumIndicators; ++k)
            row.x[k] = static_cast<double>(k + 1) +
                       (1.0 + 0.1 * k) * rng.next_normal();
        row.wcp = 1000.0 + 100.0 * rng.next_normal();
        if (row.wcp <= 1.0) row.wcp = 1.0 + std::abs(row.wcp);
        data.rows.push_back(std::move(row));
    }
    return data;
}

Dataset make_synthetic(const SyntheticSpec& spec) {
    Dataset data = make_random_dataset(spec.n, spec.seed);

    // Standardize with sample moments so the pipeline's scaler reproduces
    // exactly the inputs the generating coefficients act on.
    std::array<double, kNumIndicators> mean{}, sd{};
    for (int k = 0; k < kNumIndicators; ++k) {
        auto col = data.column(k);
        mean[k] = stats::mean(col);
        sd[k] = stats::stddev(col);
    }

    stats::Rng noise(spec.seed ^ 0x9e3779b97f4a7c15ULL);
    for (auto& row : data.rows) {
        std::array<double, kNumIndicators> z{};
        for (int k = 0; k < kNumIndicators; ++k)
            z[k] = (row.x[k] - mean[k]) / sd[k];
        double t = spec.intercept;
        for (const auto& [term, coef] : spec.coefficients)
            t += term.is_interaction() ? coef * z[term.i - 1] * z[term.j - 1]
                                       : coef * z[term.i - 1];
        t += spec.sigma * noise.next_normal();
        row.wcp = johnson::inverse(t, spec.transform);
    }
    return data;
}

std::string write_temp_csv(const Dataset& data, const std::string& stem) {
    const auto path =
        (std::filesystem::temp_directory_path() / (stem + ".csv")).string();
    save_csv(data, path);
    return path;
}

} // namespace testutil
