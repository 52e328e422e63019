#include "sectorcast/johnson.hpp"
#include "sectorcast/diagnose.hpp"
#include "sectorcast/errors.hpp"
#include "sectorcast/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace sectorcast::johnson {

namespace {

void check_params(const JohnsonSbParams& p) {
    if (!(p.eta > 0.0)) throw NumericError("JohnsonSbParams: eta must be > 0");
    if (!(p.lambda > 0.0)) throw NumericError("JohnsonSbParams: lambda must be > 0");
}

} // namespace

double forward(double x, const JohnsonSbParams& p) {
    check_params(p);
    if (!p.in_support(x))
        throw OutOfSupport("x = " + std::to_string(x) +
                           " outside open support (" + std::to_string(p.xi) +
                           ", " + std::to_string(p.upper()) + ")");
    return p.gamma + p.eta * std::log((x - p.xi) / (p.upper() - x));
}

double inverse(double t, const JohnsonSbParams& p) {
    check_params(p);
    if (!std::isfinite(t)) throw NonFiniteInput("inverse: t must be finite");
    // Logistic form keeps the output strictly inside (xi, xi + lambda).
    const double u = (p.gamma - t) / p.eta;
    double x;
    if (u > 0) {
        const double e = std::exp(-u);
        x = p.xi + p.lambda * e / (e + 1.0);
    } else {
        x = p.xi + p.lambda / (1.0 + std::exp(u));
    }
    if (x <= p.xi) x = std::nextafter(p.xi, p.upper());
    if (x >= p.upper()) x = std::nextafter(p.upper(), p.xi);
    return x;
}

namespace {

// Slifker-Shapiro percentile-method candidate for one z value.
// Returns false when the four percentiles do not admit valid SB parameters.
bool sb_candidate(std::span<const double> sorted, double z, JohnsonSbParams& out) {
    const double p3 = stats::norm_cdf(3.0 * z);
    const double p1 = stats::norm_cdf(z);
    const double x_m3 = stats::quantile_sorted(sorted, 1.0 - p3);
    const double x_m1 = stats::quantile_sorted(sorted, 1.0 - p1);
    const double x_p1 = stats::quantile_sorted(sorted, p1);
    const double x_p3 = stats::quantile_sorted(sorted, p3);

    const double m = x_p3 - x_p1;
    const double n = x_m1 - x_m3;
    const double p = x_p1 - x_m1;
    if (!(m > 0.0 && n > 0.0 && p > 0.0)) return false;

    const double pm = p / m, pn = p / n;
    const double ratio = p * p / (m * n); // SB iff > 1 (mn/p^2 < 1)
    if (!(ratio > 1.0)) return false;

    const double cosh_arg = 0.5 * std::sqrt((1.0 + pm) * (1.0 + pn));
    if (!(cosh_arg > 1.0)) return false;
    const double eta = z / std::acosh(cosh_arg);
    if (!(eta > 0.0) || !std::isfinite(eta)) return false;

    const double denom = ratio - 1.0; // positive for SB
    const double inner = (1.0 + pm) * (1.0 + pn) - 4.0;
    if (inner < 0.0) return false;
    const double gamma =
        eta * std::asinh((pn - pm) * std::sqrt(inner) / (2.0 * denom));

    const double lam_inner = ((1.0 + pm) * (1.0 + pn) - 2.0);
    const double lam_rad = lam_inner * lam_inner - 4.0;
    if (lam_rad < 0.0) return false;
    const double lambda = p * std::sqrt(lam_rad) / denom;
    if (!(lambda > 0.0) || !std::isfinite(lambda)) return false;

    const double xi =
        0.5 * (x_p1 + x_m1) - 0.5 * lambda + p * (pn - pm) / (2.0 * denom);

    out.gamma = gamma;
    out.eta = eta;
    out.xi = xi;
    out.lambda = lambda;
    return std::isfinite(gamma) && std::isfinite(xi);
}

} // namespace

JohnsonSbParams fit_sb(std::span<const double> sample) {
    if (sample.size() < 20)
        throw SampleTooSmall("fit_sb: need at least 20 points");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == sorted.back())
        throw DegenerateSample("fit_sb: constant sample");

    bool found = false;
    JohnsonSbParams best;
    double best_p = -1.0;
    double best_z = 0.0;

    std::vector<double> transformed(sorted.size());
    for (int step = 0; step <= 100; ++step) {
        const double z = 0.25 + 0.01 * step;
        JohnsonSbParams cand;
        if (!sb_candidate(sorted, z, cand)) continue;

        // Widen the support slightly so sample extremes on the boundary
        // do not invalidate an otherwise good candidate.
        const double margin = 1e-6 * cand.lambda;
        cand.xi -= margin;
        cand.lambda += 2.0 * margin;

        if (sorted.front() <= cand.xi || sorted.back() >= cand.upper()) continue;

        for (std::size_t i = 0; i < sorted.size(); ++i)
            transformed[i] = forward(sorted[i], cand);
        double sw_p;
        try {
            sw_p = diagnose::shapiro_wilk(transformed).p_value;
        } catch (const Error&) {
            continue;
        }
        // Ties on p go to the smallest z.
        if (sw_p > best_p + 1e-15) {
            best_p = sw_p;
            best = cand;
            best_z = z;
            found = true;
        }
    }

    if (!found)
        throw NoValidFit("fit_sb: no grid candidate yields valid SB parameters");
    best.fit_meta = JohnsonSbParams::FitMeta{best_z, best_p};
    return best;
}

} // namespace sectorcast::johnson
