#include "sectorcast/select.hpp"
#include "sectorcast/errors.hpp"
#include "sectorcast/stats.hpp"

#include <algorithm>
#include <cmath>

namespace sectorcast {

std::vector<int> VifReport::flagged() const {
    std::vector<int> out;
    for (int k = 0; k < kNumIndicators; ++k)
        if (vif[k] >= flag_threshold) out.push_back(k + 1);
    return out;
}

namespace select {

CorrelationReport correlation_matrix(const Dataset& data) {
    constexpr int dim = kNumIndicators + 1;
    std::vector<std::vector<double>> cols(dim);
    for (int k = 0; k < kNumIndicators; ++k) cols[k] = data.column(k);
    cols[kNumIndicators] = data.response();

    CorrelationReport report;
    report.matrix = Eigen::MatrixXd::Identity(dim, dim);
    for (int a = 0; a < dim; ++a)
        for (int b = a + 1; b < dim; ++b) {
            const double r = stats::pearson(cols[a], cols[b]);
            report.matrix(a, b) = r;
            report.matrix(b, a) = r;
            if (std::fabs(r) > report.cutoff)
                report.high_pairs.push_back({a, b, r});
        }
    return report;
}

VifReport vif(const Dataset& data) {
    if (data.size() < 12) throw DatasetTooSmall("vif: need at least 12 rows");
    const auto x10 = regress::indicator_matrix(data);
    const Eigen::Index n = x10.rows();

    VifReport report;
    for (int j = 0; j < kNumIndicators; ++j) {
        Eigen::MatrixXd X(n, kNumIndicators); // intercept + other nine
        X.col(0).setOnes();
        Eigen::Index c = 1;
        for (int k = 0; k < kNumIndicators; ++k)
            if (k != j) X.col(c++) = x10.col(k);
        const auto fit = regress::fit_ols(X, x10.col(j));
        const double r2 = std::min(fit.r_squared, 1.0 - 1e-12);
        report.vif[j] = 1.0 / (1.0 - r2);
    }
    return report;
}

namespace {

bool main_has_live_interaction(const ModelSpec& spec, int main_idx) {
    for (const auto& t : spec.terms)
        if (t.is_interaction() && (t.i == main_idx || t.j == main_idx))
            return true;
    return false;
}

} // namespace

std::pair<ModelSpec, EliminationTrace> backward_eliminate(
    const Dataset& scaled_train, const ModelSpec& start, double alpha,
    bool heredity) {
    start.validate();
    const auto x10 = regress::indicator_matrix(scaled_train);
    const auto y = regress::response_vector(scaled_train);
    if (scaled_train.size() <= start.size() + 1)
        throw UnfittableStart("backward_eliminate: start spec too large for n");

    ModelSpec current = start;
    std::sort(current.terms.begin(), current.terms.end());

    EliminationTrace trace;
    trace.alpha = alpha;
    trace.heredity = heredity;

    int step = 0;
    while (!current.terms.empty()) {
        const auto X = regress::build_design(x10, current);
        const auto fit = regress::fit_ols(X, y);

        // Pick the eligible term with the largest p-value above alpha.
        // Ties within 1e-12 drop the lexicographically latest term.
        int worst = -1;
        double worst_p = alpha;
        for (std::size_t k = 0; k < current.terms.size(); ++k) {
            const auto& t = current.terms[k];
            if (heredity && !t.is_interaction() &&
                main_has_live_interaction(current, t.i))
                continue;
            const double p = fit.p_values(static_cast<Eigen::Index>(k + 1));
            if (p > worst_p + 1e-12 ||
                (worst >= 0 && std::fabs(p - worst_p) <= 1e-12)) {
                worst = static_cast<int>(k);
                worst_p = p;
            }
        }
        if (worst < 0) break;

        trace.steps.push_back({++step, current.terms[worst], worst_p});
        current.terms.erase(current.terms.begin() + worst);
    }

    trace.final_spec = current;
    return {current, trace};
}

} // namespace select
} // namespace sectorcast
