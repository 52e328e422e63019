#include "sectorcast/dataset.hpp"
#include "sectorcast/errors.hpp"
#include "sectorcast/stats.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace sectorcast {

const std::array<std::string, kNumIndicators> kIndicatorColumns = {
    "beta",     "fcf_per_share", "pb_ratio",      "pe_ratio", "peg_ratio",
    "div_yield", "interest_rate", "ics",           "psr",      "gdp"};

std::vector<double> Dataset::column(int indicator) const {
    std::vector<double> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.push_back(r.x[indicator]);
    return v;
}

std::vector<double> Dataset::response() const {
    std::vector<double> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.push_back(r.wcp);
    return v;
}

namespace {

std::string normalize_header(std::string s) {
    std::string out;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& raw, std::size_t row, const std::string& col) {
    const std::string s = trim(raw);
    if (s.empty())
        throw UnparseableValue("empty value at row " + std::to_string(row) +
                               ", column " + col);
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw UnparseableValue("cannot parse '" + s + "' at row " +
                               std::to_string(row) + ", column " + col);
    }
    if (pos != s.size())
        throw UnparseableValue("trailing junk in '" + s + "' at row " +
                               std::to_string(row) + ", column " + col);
    if (!std::isfinite(v))
        throw NonFiniteValue("non-finite value at row " + std::to_string(row) +
                             ", column " + col);
    return v;
}

bool valid_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::unordered_map<std::string, std::size_t> index_header(
    const std::vector<std::string>& fields,
    const std::vector<std::string>& required, const std::string& path) {
    std::unordered_map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < fields.size(); ++i)
        pos[normalize_header(fields[i])] = i;
    for (const auto& col : required)
        if (!pos.count(col))
            throw MissingColumn("missing column '" + col + "' in " + path);
    return pos;
}

} // namespace

Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);

    std::vector<std::string> required = {"week_start"};
    for (const auto& c : kIndicatorColumns) required.push_back(c);
    required.push_back("wcp");

    std::string line;
    if (!std::getline(in, line)) throw MissingColumn("empty file " + path);
    auto pos = index_header(split_line(line), required, path);

    Dataset data;
    data.provenance = "loaded from " + path;
    std::size_t row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (trim(line).empty()) continue;
        auto fields = split_line(line);
        ObservationRow row;
        const std::string date = trim(fields.at(pos["week_start"]));
        if (!valid_iso_date(date))
            throw UnparseableValue("bad ISO date '" + date + "' at row " +
                                   std::to_string(row_no));
        row.week_start = date;
        for (int k = 0; k < kNumIndicators; ++k)
            row.x[k] = parse_double(fields.at(pos[kIndicatorColumns[k]]), row_no,
                                    kIndicatorColumns[k]);
        row.wcp = parse_double(fields.at(pos["wcp"]), row_no, "wcp");
        data.rows.push_back(std::move(row));
    }

    std::stable_sort(data.rows.begin(), data.rows.end(),
                     [](const ObservationRow& a, const ObservationRow& b) {
                         return a.week_start < b.week_start;
                     });
    validate_dataset(data);
    return data;
}

void save_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << "week_start";
    for (const auto& c : kIndicatorColumns) out << ',' << c;
    out << ",wcp\n";
    out.precision(17);
    for (const auto& r : data.rows) {
        out << r.week_start;
        for (double v : r.x) out << ',' << v;
        out << ',' << r.wcp << '\n';
    }
}

std::vector<CompanyWeekRecord> load_company_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);

    std::vector<std::string> required = {"ticker", "week_start"};
    for (int k = 0; k < 6; ++k) required.push_back(kIndicatorColumns[k]);

    std::string line;
    if (!std::getline(in, line)) throw MissingColumn("empty file " + path);
    auto pos = index_header(split_line(line), required, path);

    std::vector<CompanyWeekRecord> records;
    std::unordered_set<std::string> seen;
    std::size_t row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (trim(line).empty()) continue;
        auto fields = split_line(line);
        CompanyWeekRecord rec;
        rec.ticker = trim(fields.at(pos["ticker"]));
        rec.week_start = trim(fields.at(pos["week_start"]));
        if (!valid_iso_date(rec.week_start))
            throw UnparseableValue("bad ISO date '" + rec.week_start +
                                   "' at row " + std::to_string(row_no));
        if (!seen.insert(rec.ticker + "|" + rec.week_start).second)
            throw DuplicateWeek("duplicate (ticker, week) pair " + rec.ticker +
                                ", " + rec.week_start + " at row " +
                                std::to_string(row_no));
        for (int k = 0; k < 6; ++k)
            rec.values[k] = parse_double(fields.at(pos[kIndicatorColumns[k]]),
                                         row_no, kIndicatorColumns[k]);
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<AggregatedWeek> aggregate_companies(
    std::span<const CompanyWeekRecord> records) {
    if (records.empty()) throw EmptyInput("aggregate_companies: no records");
    std::map<std::string, std::pair<std::array<double, 6>, std::size_t>> acc;
    for (const auto& rec : records) {
        auto& [sums, count] = acc[rec.week_start];
        for (int k = 0; k < 6; ++k) sums[k] += rec.values[k];
        ++count;
    }
    std::vector<AggregatedWeek> out;
    out.reserve(acc.size());
    for (const auto& [week, entry] : acc) {
        AggregatedWeek w;
        w.week_start = week;
        for (int k = 0; k < 6; ++k)
            w.values[k] = entry.first[k] / static_cast<double>(entry.second);
        out.push_back(std::move(w));
    }
    return out;
}

double compute_beta(std::span<const double> stock_returns,
                    std::span<const double> market_returns) {
    if (stock_returns.size() != market_returns.size())
        throw LengthMismatch("compute_beta: series lengths differ");
    if (stock_returns.size() < 2)
        throw InputError("compute_beta: need at least 2 points");
    const double ms = stats::mean(stock_returns);
    const double mm = stats::mean(market_returns);
    double cov = 0.0, var = 0.0;
    for (std::size_t i = 0; i < stock_returns.size(); ++i) {
        cov += (stock_returns[i] - ms) * (market_returns[i] - mm);
        var += (market_returns[i] - mm) * (market_returns[i] - mm);
    }
    if (var == 0.0)
        throw ZeroMarketVariance("compute_beta: market returns are constant");
    return cov / var;
}

double safe_ratio(double numerator, double denominator) {
    if (denominator == 0.0) throw ZeroDenominator("safe_ratio: zero denominator");
    return numerator / denominator;
}

std::pair<Dataset, ScalerParams> standardize(const Dataset& data) {
    ScalerParams params;
    for (int k = 0; k < kNumIndicators; ++k) {
        auto col = data.column(k);
        params.mean[k] = stats::mean(col);
        const double sd = stats::stddev(col);
        if (sd == 0.0)
            throw ConstantColumn("standardize: constant column " +
                                 kIndicatorColumns[k]);
        params.stddev[k] = sd;
    }
    Dataset scaled = data;
    for (auto& row : scaled.rows)
        for (int k = 0; k < kNumIndicators; ++k)
            row.x[k] = params.scale(k, row.x[k]);
    return {std::move(scaled), params};
}

std::pair<Dataset, Dataset> split(const Dataset& data, const SplitSpec& spec) {
    const std::size_t n = data.size();
    if (n < 10) throw DatasetTooSmall("split: need at least 10 rows");
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw InputError("split: train_fraction must be in (0, 1)");
    const auto n_train = static_cast<std::size_t>(
        std::llround(spec.train_fraction * static_cast<double>(n)));
    auto idx = stats::shuffled_indices(n, spec.seed);
    std::vector<bool> in_train(n, false);
    for (std::size_t i = 0; i < n_train; ++i) in_train[idx[i]] = true;
    Dataset train, test;
    train.provenance = data.provenance + " [train]";
    test.provenance = data.provenance + " [test]";
    for (std::size_t i = 0; i < n; ++i)
        (in_train[i] ? train : test).rows.push_back(data.rows[i]);
    return {std::move(train), std::move(test)};
}

void validate_dataset(const Dataset& data) {
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        const auto& r = data.rows[i];
        if (!(r.wcp > 0.0))
            throw InputError("wcp must be positive at " + r.week_start);
        if (!std::isfinite(r.wcp))
            throw NonFiniteValue("non-finite wcp at " + r.week_start);
        for (double v : r.x)
            if (!std::isfinite(v))
                throw NonFiniteValue("non-finite indicator at " + r.week_start);
        if (i > 0) {
            if (data.rows[i - 1].week_start == r.week_start)
                throw DuplicateWeek("duplicate week " + r.week_start);
            if (data.rows[i - 1].week_start > r.week_start)
                throw InputError("weeks not in ascending order at " + r.week_start);
        }
    }
}

} // namespace sectorcast
