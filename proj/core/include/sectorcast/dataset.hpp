#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sectorcast {

inline constexpr int kNumIndicators = 10;

// Canonical indicator column names, index 0..9 <-> x1..x10.
extern const std::array<std::string, kNumIndicators> kIndicatorColumns;

// One weekly row: ten indicators plus the weekly closing price response.
struct ObservationRow {
    std::string week_start; // ISO 8601 date
    std::array<double, kNumIndicators> x{};
    double wcp = 0.0;
};

struct Dataset {
    std::vector<ObservationRow> rows;
    std::string provenance;

    std::size_t size() const { return rows.size(); }
    std::vector<double> column(int indicator) const; // 0-based
    std::vector<double> response() const;
};

// Per-company weekly record carrying the six financial indicators.
struct CompanyWeekRecord {
    std::string ticker;
    std::string week_start;
    std::array<double, 6> values{};
};

struct AggregatedWeek {
    std::string week_start;
    std::array<double, 6> values{};
};

struct ScalerParams {
    std::array<double, kNumIndicators> mean{};
    std::array<double, kNumIndicators> stddev{};

    double scale(int indicator, double raw) const {
        return (raw - mean[indicator]) / stddev[indicator];
    }
    double unscale(int indicator, double scaled) const {
        return scaled * stddev[indicator] + mean[indicator];
    }
};

struct SplitSpec {
    double train_fraction = 0.8;
    std::uint64_t seed = 20170106; // first week of the data period
};

// Minimum rows required before any fitting operation.
inline constexpr std::size_t kMinFitRows = 30;

Dataset load_csv(const std::string& path);
void save_csv(const Dataset& data, const std::string& path);

std::vector<CompanyWeekRecord> load_company_csv(const std::string& path);

// Equal-weighted mean across tickers for each distinct week.
std::vector<AggregatedWeek> aggregate_companies(
    std::span<const CompanyWeekRecord> records);

double compute_beta(std::span<const double> stock_returns,
                    std::span<const double> market_returns);

double safe_ratio(double numerator, double denominator);

// Z-scores each indicator column in place (response untouched) and
// returns the per-column parameters needed to invert the mapping.
std::pair<Dataset, ScalerParams> standardize(const Dataset& data);

std::pair<Dataset, Dataset> split(const Dataset& data, const SplitSpec& spec);

// Throws unless the full Dataset invariant set holds.
void validate_dataset(const Dataset& data);

} // namespace sectorcast
