#pragma once

#include <optional>
#include <span>

namespace sectorcast {

// Bounded-family (SB) normalizing transform parameters.
// Support is the open interval (xi, xi + lambda).
struct JohnsonSbParams {
    double gamma = 0.0;  // shape
    double eta = 1.0;    // shape, > 0
    double xi = 0.0;     // location
    double lambda = 1.0; // scale, > 0

    struct FitMeta {
        double z = 0.0;    // percentile-method grid value selected
        double sw_p = 0.0; // Shapiro-Wilk p of the transformed sample
    };
    std::optional<FitMeta> fit_meta;

    double upper() const { return xi + lambda; }
    bool in_support(double x) const { return x > xi && x < upper(); }
};

namespace johnson {

// gamma + eta * ln((x - xi) / (xi + lambda - x)); strictly increasing on
// the open support, hard error outside it.
double forward(double x, const JohnsonSbParams& p);

// xi + lambda / (1 + exp((gamma - t) / eta)); total on finite t, output
// strictly inside the support.
double inverse(double t, const JohnsonSbParams& p);

// Percentile-method fit over a grid of z values, scored by the
// Shapiro-Wilk p-value of the transformed sample.
JohnsonSbParams fit_sb(std::span<const double> sample);

} // namespace johnson
} // namespace sectorcast
