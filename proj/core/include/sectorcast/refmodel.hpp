#pragma once

#include "sectorcast/johnson.hpp"
#include "sectorcast/regress.hpp"

#include <array>
#include <utility>
#include <vector>

namespace sectorcast {

// Hard-coded coefficients and transform of the published predictive model.
// Inputs to the predictor must already be standardized: the original
// scaler means and stddevs were never published, so raw-scale entry is
// not possible.
struct PublishedModel {
    double intercept = 0.0;
    std::vector<std::pair<TermId, double>> coefficients; // 19 terms
    JohnsonSbParams transform;

    ModelSpec spec() const;
    double coefficient(const TermId& t) const;
};

struct Table3Fixture {
    struct Row {
        int obs_id;
        double observed;
        double predicted;
    };
    std::vector<Row> rows; // 30 printed pairs

    std::vector<double> observed() const;
    std::vector<double> predicted() const;
};

namespace refmodel {

const PublishedModel& published_spec();

// Linear predictor on 10 standardized values, then the inverse transform;
// output in (711.5838, 1794.5468) for all finite inputs.
double predict_published(const std::array<double, kNumIndicators>& standardized);
double predict_published_transformed(
    const std::array<double, kNumIndicators>& standardized);

const Table3Fixture& table3_fixtures();

// Published model wrapped in the FittedModel JSON schema (identity scaler,
// zero inference statistics).
FittedModel as_fitted_model();

} // namespace refmodel
} // namespace sectorcast
