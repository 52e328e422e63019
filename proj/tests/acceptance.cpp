// Acceptance gate: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Each check is self-contained and deterministic.

#include "sectorcast/diagnose.hpp"
#include "sectorcast/johnson.hpp"
#include "sectorcast/refmodel.hpp"
#include "sectorcast/regress.hpp"
#include "sectorcast/select.hpp"
#include "sectorcast/stats.hpp"
#include "sectorcast/validate.hpp"

#include "helpers.hpp"

#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace sectorcast;
using Clock = std::chrono::steady_clock;

namespace {

JohnsonSbParams reference_transform() {
    JohnsonSbParams p;
    p.gamma = 0.4091;
    p.eta = 1.2208;
    p.xi = 711.5838;
    p.lambda = 1082.963;
    return p;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// --- criterion 1: transform roundtrip precision and speed -----------------

bool check_roundtrip() {
    const auto p = reference_transform();
    stats::Rng rng(1);
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double x = p.xi + p.lambda * (1e-9 + (1.0 - 2e-9) * rng.next_unit());
        const double back = johnson::inverse(johnson::forward(x, p), p);
        worst = std::max(worst, std::fabs(back - x) / p.lambda);
    }
    return worst < 1e-12 && seconds_since(t0) < 1.0;
}

// --- criterion 2: inverse-transform midpoint identity and bounds ----------

bool check_inverse_identity() {
    const auto p = reference_transform();
    if (std::fabs(johnson::inverse(0.4091, p) - 1253.0653) > 1e-4) return false;
    for (double t : {-1e6, 0.0, 1e6}) {
        const double x = johnson::inverse(t, p);
        if (!(x > 711.5838 && x < 1794.5468)) return false;
    }
    return true;
}

// --- criterion 3: reference test-set metrics ------------------------------

bool check_reference_metrics() {
    const auto t0 = Clock::now();
    const auto& f = refmodel::table3_fixtures();
    const double rmse = validate::rmse(f.observed(), f.predicted());
    const double mape = validate::mape(f.observed(), f.predicted());
    return std::fabs(rmse - 21.035005665160) < 1e-9 &&
           std::fabs(rmse - 22.72) / 22.72 < 0.15 &&
           std::fabs(mape - 1.38) / 1.38 < 0.15 && seconds_since(t0) < 1.0;
}

// --- criterion 4: adjusted-R^2 identity -----------------------------------

bool check_adjusted_r2() {
    return std::fabs(validate::adj_r_squared(0.9944, 125, 18) - 0.9934) < 0.0005;
}

// --- criterion 5: OLS equals the normal-equation oracle -------------------

bool check_ols_oracle() {
    stats::Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 6 + static_cast<Eigen::Index>(rng.next_below(5));
        const Eigen::Index k = 2 + static_cast<Eigen::Index>(rng.next_below(2));
        Eigen::MatrixXd X(n, k);
        X.col(0).setOnes();
        for (Eigen::Index c = 1; c < k; ++c)
            for (Eigen::Index r = 0; r < n; ++r) X(r, c) = rng.next_normal();
        Eigen::VectorXd y(n);
        for (Eigen::Index r = 0; r < n; ++r) y(r) = rng.next_normal();

        const auto fit = regress::fit_ols(X, y);
        const Eigen::VectorXd oracle =
            (X.transpose() * X).inverse() * X.transpose() * y;
        for (Eigen::Index j = 0; j < k; ++j)
            if (std::fabs(fit.coef(j) - oracle(j)) >
                1e-10 * std::max(1.0, std::fabs(oracle(j))))
                return false;
    }
    return true;
}

// --- criterion 6: RSS gradient vanishes at the fit ------------------------

bool check_gradient() {
    stats::Rng rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index n = 40, k = 5;
        Eigen::MatrixXd X(n, k);
        X.col(0).setOnes();
        for (Eigen::Index c = 1; c < k; ++c)
            for (Eigen::Index r = 0; r < n; ++r) X(r, c) = rng.next_normal();
        Eigen::VectorXd y(n);
        for (Eigen::Index r = 0; r < n; ++r) y(r) = rng.next_normal();

        const auto fit = regress::fit_ols(X, y);
        const double sse = fit.residuals.squaredNorm();
        for (Eigen::Index j = 0; j < k; ++j) {
            Eigen::VectorXd hi = fit.coef, lo = fit.coef;
            hi(j) += 1e-6;
            lo(j) -= 1e-6;
            const double grad =
                ((y - X * hi).squaredNorm() - (y - X * lo).squaredNorm()) / 2e-6;
            if (std::fabs(grad) > 1e-4 * std::max(sse, 1.0)) return false;
        }
    }
    return true;
}

// --- criterion 7: VIF analytics -------------------------------------------

bool check_vif() {
    // Exactly orthonormal indicator columns, orthogonal to the intercept.
    {
        const Eigen::Index n = 64;
        stats::Rng rng(7);
        Eigen::MatrixXd raw(n, kNumIndicators + 1);
        raw.col(0).setOnes();
        for (Eigen::Index c = 1; c <= kNumIndicators; ++c)
            for (Eigen::Index r = 0; r < n; ++r) raw(r, c) = rng.next_normal();
        Eigen::MatrixXd Q =
            Eigen::HouseholderQR<Eigen::MatrixXd>(raw).householderQ() *
            Eigen::MatrixXd::Identity(n, kNumIndicators + 1);

        Dataset data;
        for (Eigen::Index r = 0; r < n; ++r) {
            ObservationRow row;
            row.week_start = testutil::week_date(static_cast<std::size_t>(r));
            for (int k = 0; k < kNumIndicators; ++k) row.x[k] = Q(r, k + 1);
            row.wcp = 100.0;
            data.rows.push_back(std::move(row));
        }
        for (double v : select::vif(data).vif)
            if (std::fabs(v - 1.0) > 1e-8) return false;
    }
    // Planted correlation r = 0.6 on the first two columns.
    {
        stats::Rng rng(8);
        Dataset data;
        for (std::size_t i = 0; i < 10000; ++i) {
            ObservationRow row;
            row.week_start = testutil::week_date(i);
            const double u = rng.next_normal();
            row.x[0] = u;
            row.x[1] = 0.6 * u + std::sqrt(1.0 - 0.36) * rng.next_normal();
            for (int k = 2; k < kNumIndicators; ++k) row.x[k] = rng.next_normal();
            row.wcp = 100.0;
            data.rows.push_back(std::move(row));
        }
        const auto report = select::vif(data);
        for (int j : {0, 1})
            if (std::fabs(report.vif[j] - 1.5625) / 1.5625 > 0.02) return false;
    }
    return true;
}

// --- criterion 8: elimination recovers a planted sparse model -------------

bool check_elimination_recovery() {
    int hits = 0;
    for (int seed = 0; seed < 50; ++seed) {
        testutil::SyntheticSpec gen;
        gen.n = 200;
        gen.coefficients = {{TermId::main(1), 2.0},
                            {TermId::main(2), 1.0},
                            {TermId::interaction(1, 2), 3.0}};
        gen.sigma = 0.1;
        gen.seed = 9000 + static_cast<std::uint64_t>(seed);
        auto data = testutil::make_synthetic(gen);
        auto [scaled, scaler] = standardize(data);
        for (auto& row : scaled.rows)
            row.wcp = johnson::forward(row.wcp, gen.transform);

        ModelSpec start; // 20 terms: 5 mains + interactions among X1..X6
        for (int i = 1; i <= 5; ++i) start.terms.push_back(TermId::main(i));
        for (int i = 1; i <= 6; ++i)
            for (int j = i + 1; j <= 6; ++j)
                start.terms.push_back(TermId::interaction(i, j));

        auto [final_spec, trace] =
            select::backward_eliminate(scaled, start, 0.05, true);
        if (final_spec.contains(TermId::main(1)) &&
            final_spec.contains(TermId::main(2)) &&
            final_spec.contains(TermId::interaction(1, 2)))
            ++hits;
    }
    if (hits < 48) return false;

    // Heredity fixture: main effects stay while their interaction drives.
    testutil::SyntheticSpec gen;
    gen.n = 300;
    gen.coefficients = {{TermId::interaction(1, 2), 3.0}};
    gen.sigma = 0.05;
    gen.seed = 29;
    auto data = testutil::make_synthetic(gen);
    auto [scaled, scaler] = standardize(data);
    for (auto& row : scaled.rows)
        row.wcp = johnson::forward(row.wcp, gen.transform);
    ModelSpec start;
    start.terms = {TermId::main(1), TermId::main(2), TermId::interaction(1, 2)};
    auto [final_spec, trace] = select::backward_eliminate(scaled, start, 0.05, true);
    return final_spec.contains(TermId::interaction(1, 2)) &&
           final_spec.contains(TermId::main(1)) &&
           final_spec.contains(TermId::main(2));
}

// --- criterion 9: normality tests vs committed golden fixtures ------------

bool check_normality_goldens() {
    std::ifstream gin(std::string(FIXTURE_DIR) + "/normality_golden.json");
    if (!gin) return false;
    nlohmann::json golden;
    gin >> golden;
    if (golden.size() != 6) return false;

    for (const auto& fx : golden) {
        std::ifstream in(std::string(FIXTURE_DIR) + "/" +
                         fx["name"].get<std::string>() + ".csv");
        if (!in) return false;
        std::vector<double> sample;
        double x;
        while (in >> x) sample.push_back(x);
        if (sample.size() != fx["n"].get<std::size_t>()) return false;

        const auto sw = diagnose::shapiro_wilk(sample);
        const auto ad = diagnose::anderson_darling(sample);
        if (std::fabs(sw.statistic - fx["sw_w"].get<double>()) > 0.01 ||
            std::fabs(sw.p_value - fx["sw_p"].get<double>()) > 0.01 ||
            std::fabs(ad.statistic - fx["ad_a2"].get<double>()) > 0.01 ||
            std::fabs(ad.p_value - fx["ad_p"].get<double>()) > 0.01)
            return false;
    }
    return true;
}

// --- criterion 10: transform fit recovers known parameters ----------------

bool check_transform_fit_recovery() {
    const auto truth = reference_transform();
    int good_seeds = 0;
    for (int seed = 0; seed < 20; ++seed) {
        stats::Rng rng(4000 + static_cast<std::uint64_t>(seed));
        std::vector<double> sample(500);
        for (auto& v : sample) v = johnson::inverse(rng.next_normal(), truth);

        const auto fit = johnson::fit_sb(sample);
        const bool endpoints_ok =
            std::fabs(fit.xi - truth.xi) <= 0.10 * truth.lambda &&
            std::fabs(fit.upper() - truth.upper()) <= 0.10 * truth.lambda;

        std::vector<double> transformed;
        transformed.reserve(sample.size());
        for (double v : sample)
            transformed.push_back(johnson::forward(v, fit));
        const bool normal_ok =
            diagnose::shapiro_wilk(transformed).p_value > 0.05;
        if (endpoints_ok && normal_ok) ++good_seeds;
    }
    return good_seeds >= 18;
}

// --- criterion 11: cross-validation consistency ---------------------------

bool check_cv_consistency() {
    std::vector<double> gaps;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        testutil::SyntheticSpec gen;
        gen.n = 200;
        gen.coefficients = {{TermId::main(1), 1.0},
                            {TermId::interaction(2, 3), 0.5}};
        gen.sigma = 0.1;
        gen.seed = 70 + seed;
        auto data = testutil::make_synthetic(gen);
        auto [scaled, scaler] = standardize(data);
        for (auto& row : scaled.rows)
            row.wcp = johnson::forward(row.wcp, gen.transform);

        ModelSpec spec;
        spec.terms = {TermId::main(1), TermId::main(2), TermId::main(3),
                      TermId::interaction(2, 3)};
        const auto report = validate::kfold_cv(scaled, spec, 10, 5, seed);
        gaps.push_back(std::fabs(report.mspe / report.msetr - 1.0));
    }
    std::sort(gaps.begin(), gaps.end());
    return gaps[gaps.size() / 2] < 0.20;
}

// --- criterion 12: end-to-end determinism and runtime ---------------------

bool check_end_to_end() {
    const auto t0 = Clock::now();
    testutil::SyntheticSpec gen;
    gen.n = 156;
    gen.coefficients = {{TermId::main(10), 0.6781},
                        {TermId::main(5), 0.0941},
                        {TermId::interaction(5, 7), -0.6059}};
    gen.sigma = 0.05;
    gen.seed = 20170106;
    const auto csv =
        testutil::write_temp_csv(testutil::make_synthetic(gen), "acceptance_e2e");

    const auto base = fs::temp_directory_path() / "sectorcast_acceptance";
    fs::remove_all(base);
    auto run_fit = [&] {
        const std::string cmd = std::string(SECTORCAST_BIN) + " fit --input " +
                                csv + " --out " + base.string() +
                                " > /dev/null 2>&1";
        return WEXITSTATUS(std::system(cmd.c_str())) == 0;
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    if (!run_fit()) return false;
    const auto first = slurp(base / "model.json");
    if (!run_fit()) return false; // identical config, same output directory
    if (first.empty() || first != slurp(base / "model.json")) return false;
    return seconds_since(t0) < 30.0;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<bool()> check;
    };
    const std::vector<Criterion> criteria = {
        {"transform roundtrip precision (1e4 points, < 1 s)", check_roundtrip},
        {"inverse-transform midpoint identity and bounds", check_inverse_identity},
        {"reference test-set metrics (RMSE/MAPE)", check_reference_metrics},
        {"adjusted R^2 identity", check_adjusted_r2},
        {"OLS equals normal-equation oracle (20 problems)", check_ols_oracle},
        {"RSS gradient check (10 problems)", check_gradient},
        {"VIF analytics (orthogonal and planted-correlation)", check_vif},
        {"backward elimination recovery and heredity", check_elimination_recovery},
        {"normality tests vs golden fixtures", check_normality_goldens},
        {"transform fit parameter recovery (20 seeds)", check_transform_fit_recovery},
        {"cross-validation consistency (MSETr vs MSPE)", check_cv_consistency},
        {"end-to-end determinism and runtime", check_end_to_end},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        bool ok = false;
        std::string detail;
        try {
            ok = criteria[i].check();
        } catch (const std::exception& e) {
            detail = std::string(" (") + e.what() + ")";
        }
        std::printf("[%s] criterion %2zu: %s%s\n", ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].name, detail.c_str());
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all %zu criteria passed\n", criteria.size());
    return failures == 0 ? 0 : 1;
}
