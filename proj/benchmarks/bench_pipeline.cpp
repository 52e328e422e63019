// Microbenchmarks for the hot paths of the modeling pipeline.

#include "sectorcast/diagnose.hpp"
#include "sectorcast/johnson.hpp"
#include "sectorcast/regress.hpp"
#include "sectorcast/select.hpp"
#include "sectorcast/stats.hpp"
#include "sectorcast/validate.hpp"

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

using namespace sectorcast;

namespace {

JohnsonSbParams bench_transform() {
    JohnsonSbParams p;
    p.gamma = 0.4091;
    p.eta = 1.2208;
    p.xi = 711.5838;
    p.lambda = 1082.963;
    return p;
}

std::string week_date(std::size_t index) {
    // Fixed synthetic dates; uniqueness is all that matters here.
    char buf[48];
    std::snprintf(buf, sizeof(buf), "2017-%02zu-%02zu", 1 + index / 28,
                  1 + index % 28);
    return buf;
}

// Dataset whose transformed response depends on a few indicators.
Dataset make_dataset(std::size_t n, std::uint64_t seed) {
    const auto p = bench_transform();
    stats::Rng rng(seed);
    Dataset data;
    for (std::size_t i = 0; i < n; ++i) {
        ObservationRow row;
        row.week_start = week_date(i);
        for (int k = 0; k < kNumIndicators; ++k) row.x[k] = rng.next_normal();
        const double t = 0.05 + 0.7 * row.x[9] - 0.6 * row.x[4] * row.x[6] +
                         0.1 * rng.next_normal();
        row.wcp = johnson::inverse(t, p);
        data.rows.push_back(std::move(row));
    }
    return data;
}

Dataset transformed(const Dataset& data, const JohnsonSbParams& p) {
    Dataset out = data;
    for (auto& row : out.rows) row.wcp = johnson::forward(row.wcp, p);
    return out;
}

void BM_johnson_roundtrip(benchmark::State& state) {
    const auto p = bench_transform();
    double x = 1000.0;
    for (auto _ : state) {
        x = johnson::inverse(johnson::forward(x, p), p);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_johnson_roundtrip);

void BM_johnson_fit(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto p = bench_transform();
    stats::Rng rng(1);
    std::vector<double> sample(n);
    for (auto& v : sample) v = johnson::inverse(rng.next_normal(), p);
    for (auto _ : state) {
        auto fit = johnson::fit_sb(sample);
        benchmark::DoNotOptimize(fit);
    }
}
BENCHMARK(BM_johnson_fit)->Arg(125)->Arg(500);

void BM_full_interaction_fit(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto data = transformed(make_dataset(n, 2), bench_transform());
    const auto spec = ModelSpec::full_interaction();
    const auto x10 = regress::indicator_matrix(data);
    const auto X = regress::build_design(x10, spec);
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        y(static_cast<Eigen::Index>(i)) = data.rows[i].wcp;
    for (auto _ : state) {
        auto fit = regress::fit_ols(X, y);
        benchmark::DoNotOptimize(fit);
    }
}
BENCHMARK(BM_full_interaction_fit)->Arg(125)->Arg(500);

void BM_backward_elimination(benchmark::State& state) {
    auto data = transformed(make_dataset(125, 3), bench_transform());
    const auto start = ModelSpec::full_interaction();
    for (auto _ : state) {
        auto result = select::backward_eliminate(data, start, 0.05, true);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_backward_elimination)->Unit(benchmark::kMillisecond);

void BM_shapiro_wilk(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    stats::Rng rng(4);
    std::vector<double> sample(n);
    for (auto& v : sample) v = rng.next_normal();
    for (auto _ : state) {
        auto r = diagnose::shapiro_wilk(sample);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_shapiro_wilk)->Arg(125)->Arg(2000);

void BM_kfold_cv(benchmark::State& state) {
    auto data = transformed(make_dataset(125, 5), bench_transform());
    ModelSpec spec;
    spec.terms = {TermId::main(10), TermId::main(5), TermId::main(7),
                  TermId::interaction(5, 7)};
    for (auto _ : state) {
        auto report = validate::kfold_cv(data, spec, 10, 5, 6);
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_kfold_cv)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
