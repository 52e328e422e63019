#include "sectorcast/diagnose.hpp"
#include "sectorcast/errors.hpp"
#include "sectorcast/regress.hpp"
#include "sectorcast/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sectorcast::diagnose {

namespace {

std::vector<double> sorted_copy(std::span<const double> sample) {
    std::vector<double> s(sample.begin(), sample.end());
    std::sort(s.begin(), s.end());
    return s;
}

double poly5(double u, double c1, double c2, double c3, double c4, double c5) {
    return ((((c5 * u + c4) * u + c3) * u + c2) * u + c1) * u;
}

} // namespace

NormalityResult shapiro_wilk(std::span<const double> sample) {
    const std::size_t n = sample.size();
    if (n < 3 || n > 5000)
        throw SampleSizeOutOfRange("shapiro_wilk: n must be in [3, 5000]");
    auto x = sorted_copy(sample);
    if (x.front() == x.back())
        throw DegenerateSample("shapiro_wilk: constant sample");

    // Royston AS R94 weights.
    const double nd = static_cast<double>(n);
    std::vector<double> m(n);
    for (std::size_t i = 0; i < n; ++i)
        m[i] = stats::norm_quantile((static_cast<double>(i + 1) - 0.375) / (nd + 0.25));
    double summ2 = 0.0;
    for (double v : m) summ2 += v * v;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(nd);

    std::vector<double> a(n);
    const double an = m[n - 1] / ssumm2 +
                      poly5(rsn, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056);
    double phi;
    if (n > 5) {
        const double an1 =
            m[n - 2] / ssumm2 +
            poly5(rsn, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633);
        phi = (summ2 - 2.0 * m[n - 1] * m[n - 1] - 2.0 * m[n - 2] * m[n - 2]) /
              (1.0 - 2.0 * an * an - 2.0 * an1 * an1);
        a[n - 1] = an;
        a[0] = -an;
        a[n - 2] = an1;
        a[1] = -an1;
        for (std::size_t i = 2; i + 2 < n; ++i) a[i] = m[i] / std::sqrt(phi);
    } else {
        phi = (summ2 - 2.0 * m[n - 1] * m[n - 1]) / (1.0 - 2.0 * an * an);
        a[n - 1] = an;
        a[0] = -an;
        for (std::size_t i = 1; i + 1 < n; ++i) a[i] = m[i] / std::sqrt(phi);
    }

    const double xbar = stats::mean(x);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += a[i] * x[i];
        den += (x[i] - xbar) * (x[i] - xbar);
    }
    double w = num * num / den;
    if (w > 1.0) w = 1.0;

    // Royston's p-value normalization.
    double p;
    if (n == 3) {
        constexpr double pi6 = 1.90985931710274; // 6/pi
        constexpr double stqr = 1.04719755119660; // asin(sqrt(3/4))
        p = pi6 * (std::asin(std::sqrt(w)) - stqr);
        p = std::clamp(p, 0.0, 1.0);
    } else if (n <= 11) {
        const double g = -2.273 + 0.459 * nd;
        const double lw = -std::log(g - std::log1p(-w));
        const double mu = 0.5440 - 0.39978 * nd + 0.025054 * nd * nd -
                          0.0006714 * nd * nd * nd;
        const double sigma = std::exp(1.3822 - 0.77857 * nd + 0.062767 * nd * nd -
                                      0.0020322 * nd * nd * nd);
        p = 1.0 - stats::norm_cdf((lw - mu) / sigma);
    } else {
        const double ln = std::log(nd);
        const double lw = std::log1p(-w);
        const double mu = -1.5861 - 0.31082 * ln - 0.083751 * ln * ln +
                          0.0038915 * ln * ln * ln;
        const double sigma = std::exp(-0.4803 - 0.082676 * ln + 0.0030302 * ln * ln);
        p = 1.0 - stats::norm_cdf((lw - mu) / sigma);
    }

    return {"shapiro_wilk", w, p, n};
}

NormalityResult anderson_darling(std::span<const double> sample) {
    const std::size_t n = sample.size();
    if (n < 8)
        throw SampleSizeOutOfRange("anderson_darling: n must be >= 8");
    auto x = sorted_copy(sample);
    if (x.front() == x.back())
        throw DegenerateSample("anderson_darling: constant sample");

    const double mu = stats::mean(x);
    const double sd = stats::stddev(x);
    const double nd = static_cast<double>(n);

    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double zi = stats::norm_cdf((x[i] - mu) / sd);
        const double zrev = stats::norm_cdf((x[n - 1 - i] - mu) / sd);
        const double lo = std::clamp(zi, 1e-300, 1.0 - 1e-16);
        const double hi = std::clamp(zrev, 1e-300, 1.0 - 1e-16);
        s += (2.0 * static_cast<double>(i + 1) - 1.0) *
             (std::log(lo) + std::log1p(-hi));
    }
    const double a2 = -nd - s / nd;
    // Case-3 correction for estimated mean and variance.
    const double a2s = a2 * (1.0 + 0.75 / nd + 2.25 / (nd * nd));

    double p;
    if (a2s >= 0.6)
        p = std::exp(1.2937 - 5.709 * a2s + 0.0186 * a2s * a2s);
    else if (a2s > 0.34)
        p = std::exp(0.9177 - 4.279 * a2s - 1.38 * a2s * a2s);
    else if (a2s > 0.2)
        p = 1.0 - std::exp(-8.318 + 42.796 * a2s - 59.938 * a2s * a2s);
    else
        p = 1.0 - std::exp(-13.436 + 101.14 * a2s - 223.73 * a2s * a2s);
    p = std::clamp(p, 0.0, 1.0);

    return {"anderson_darling", a2s, p, n};
}

std::vector<std::pair<double, double>> qq_points(std::span<const double> sample) {
    const std::size_t n = sample.size();
    if (n < 3) throw SampleSizeOutOfRange("qq_points: n must be >= 3");
    auto x = sorted_copy(sample);
    std::vector<std::pair<double, double>> pts(n);
    const double nd = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double pp = (static_cast<double>(i + 1) - 0.375) / (nd + 0.25);
        pts[i] = {stats::norm_quantile(pp), x[i]};
    }
    return pts;
}

DiagnosticsReport residual_diagnostics(const FittedModel& model) {
    const auto& fit = model.fit;
    std::vector<double> res(fit.residuals.data(),
                            fit.residuals.data() + fit.residuals.size());

    DiagnosticsReport report;
    report.sum_residual = std::accumulate(res.begin(), res.end(), 0.0);
    report.mean_residual = report.sum_residual / static_cast<double>(res.size());
    report.shapiro = shapiro_wilk(res);
    report.anderson = anderson_darling(res);
    report.qq_points = qq_points(res);

    const double s = std::sqrt(fit.sigma2);
    report.residual_vs_fitted.reserve(res.size());
    report.studentized_residuals.reserve(res.size());
    for (Eigen::Index i = 0; i < fit.residuals.size(); ++i) {
        report.residual_vs_fitted.emplace_back(fit.fitted(i), fit.residuals(i));
        const double h = std::min(fit.leverage(i), 1.0 - 1e-12);
        report.studentized_residuals.push_back(fit.residuals(i) /
                                               (s * std::sqrt(1.0 - h)));
    }
    return report;
}

} // namespace sectorcast::diagnose
