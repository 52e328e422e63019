#include "sectorcast/johnson.hpp"
#include "sectorcast/diagnose.hpp"
#include "sectorcast/errors.hpp"
#include "sectorcast/stats.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using namespace sectorcast;

namespace {

const JohnsonSbParams kPaperParams{0.4091, 1.2208, 711.5838, 1082.963, {}};

} // namespace

TEST_CASE("forward at the support midpoint returns gamma") {
    JohnsonSbParams p{0.5, 1.2, 2.0, 8.0, {}};
    CHECK(johnson::forward(p.xi + p.lambda / 2.0, p) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(johnson::forward(1253.0653, kPaperParams) ==
          doctest::Approx(0.4091).epsilon(1e-9));
}

TEST_CASE("forward rejects out-of-support points") {
    CHECK_THROWS_AS(johnson::forward(711.5838, kPaperParams), OutOfSupport);
    CHECK_THROWS_AS(johnson::forward(700.0, kPaperParams), OutOfSupport);
    CHECK_THROWS_AS(johnson::forward(1794.5468, kPaperParams), OutOfSupport);
}

TEST_CASE("inverse midpoint, asymptotes, intercept evaluation") {
    CHECK(johnson::inverse(0.4091, kPaperParams) ==
          doctest::Approx(1253.0653).epsilon(1e-10));
    CHECK(johnson::inverse(1e6, kPaperParams) ==
          doctest::Approx(1794.5468).epsilon(1e-9));
    CHECK(johnson::inverse(-1e6, kPaperParams) ==
          doctest::Approx(711.5838).epsilon(1e-9));
    // Linear predictor of all-zero standardized inputs maps to ~1179.
    CHECK(johnson::inverse(0.0732, kPaperParams) ==
          doctest::Approx(1179.038112).epsilon(1e-6));
}

TEST_CASE("forward/inverse roundtrip to 1e-12 of lambda") {
    stats::Rng rng(99);
    for (int i = 0; i < 1000; ++i) {
        const double x = kPaperParams.xi +
                         kPaperParams.lambda * (1e-6 + 0.999998 * rng.next_unit());
        const double back = johnson::inverse(johnson::forward(x, kPaperParams),
                                             kPaperParams);
        CHECK(std::fabs(back - x) / kPaperParams.lambda < 1e-12);
    }
}

TEST_CASE("forward is strictly monotone and rank preserving") {
    stats::Rng rng(4);
    std::vector<double> xs(200);
    for (auto& x : xs)
        x = kPaperParams.xi + kPaperParams.lambda * (0.01 + 0.98 * rng.next_unit());

    std::vector<double> ts(xs.size());
    std::transform(xs.begin(), xs.end(), ts.begin(),
                   [](double x) { return johnson::forward(x, kPaperParams); });

    std::vector<std::size_t> rank_x(xs.size()), rank_t(xs.size());
    std::iota(rank_x.begin(), rank_x.end(), std::size_t{0});
    rank_t = rank_x;
    std::sort(rank_x.begin(), rank_x.end(),
              [&](auto a, auto b) { return xs[a] < xs[b]; });
    std::sort(rank_t.begin(), rank_t.end(),
              [&](auto a, auto b) { return ts[a] < ts[b]; });
    CHECK(rank_x == rank_t);
}

TEST_CASE("inverse output always lies strictly inside the support") {
    for (double t : {-50.0, -1.0, 0.0, 0.4091, 2.0, 50.0}) {
        const double x = johnson::inverse(t, kPaperParams);
        CHECK(x > kPaperParams.xi);
        CHECK(x < kPaperParams.upper());
    }
}

TEST_CASE("fit_sb recovers known parameters from an SB sample") {
    const JohnsonSbParams truth{0.5, 1.2, 0.0, 10.0, {}};
    stats::Rng rng(2023);
    std::vector<double> sample(500);
    for (auto& x : sample) x = johnson::inverse(rng.next_normal(), truth);

    auto fitted = johnson::fit_sb(sample);
    CHECK(fitted.eta > 0.0);
    CHECK(fitted.lambda > 0.0);
    CHECK(fitted.xi > -1.0);
    CHECK(fitted.xi < 1.0);
    CHECK(fitted.upper() > 9.0);
    CHECK(fitted.upper() < 11.0);

    std::vector<double> transformed(sample.size());
    std::transform(sample.begin(), sample.end(), transformed.begin(),
                   [&](double x) { return johnson::forward(x, fitted); });
    CHECK(diagnose::shapiro_wilk(transformed).p_value > 0.05);
    REQUIRE(fitted.fit_meta.has_value());
    CHECK(fitted.fit_meta->sw_p > 0.05);
}

TEST_CASE("fit_sb is affine equivariant in location") {
    const JohnsonSbParams truth{0.3, 1.0, 5.0, 8.0, {}};
    stats::Rng rng(7);
    std::vector<double> sample(500);
    for (auto& x : sample) x = johnson::inverse(rng.next_normal(), truth);

    auto base = johnson::fit_sb(sample);
    const double c = 123.5;
    std::vector<double> shifted = sample;
    for (auto& x : shifted) x += c;
    auto moved = johnson::fit_sb(shifted);

    CHECK(moved.xi - base.xi == doctest::Approx(c).epsilon(0.01));
    CHECK(moved.gamma == doctest::Approx(base.gamma).scale(1).epsilon(0.05));
    CHECK(moved.eta == doctest::Approx(base.eta).epsilon(0.05));
}

TEST_CASE("fit_sb error paths") {
    std::vector<double> tiny(10, 1.0);
    CHECK_THROWS_AS(johnson::fit_sb(tiny), SampleTooSmall);
    std::vector<double> flat(50, 3.0);
    CHECK_THROWS_AS(johnson::fit_sb(flat), DegenerateSample);
}
