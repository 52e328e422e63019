#include "sectorcast/attribute.hpp"
#include "sectorcast/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sectorcast {

std::string to_string(ContributionMethod m) {
    return m == ContributionMethod::CoefShare ? "coef_share" : "partial_ss";
}

ContributionMethod parse_contribution_method(const std::string& s) {
    if (s == "coef_share") return ContributionMethod::CoefShare;
    if (s == "partial_ss") return ContributionMethod::PartialSs;
    throw InputError("unknown contribution method '" + s + "'");
}

namespace attribute {

ContributionRanking rank_contributions(const FittedModel& model,
                                       const Dataset& scaled_data,
                                       ContributionMethod method) {
    const auto& terms = model.spec.terms;
    if (terms.empty()) throw InputError("rank_contributions: empty model");

    std::vector<double> raw(terms.size());
    if (method == ContributionMethod::CoefShare) {
        for (std::size_t k = 0; k < terms.size(); ++k)
            raw[k] = std::fabs(model.fit.coef(static_cast<Eigen::Index>(k + 1)));
    } else {
        const auto x10 = regress::indicator_matrix(scaled_data);
        const auto y = regress::response_vector(scaled_data);
        const auto full = regress::fit_ols(regress::build_design(x10, model.spec), y);
        const double full_sse = full.residuals.squaredNorm();
        for (std::size_t k = 0; k < terms.size(); ++k) {
            ModelSpec reduced = model.spec;
            reduced.terms.erase(reduced.terms.begin() +
                                static_cast<std::ptrdiff_t>(k));
            const auto fit =
                regress::fit_ols(regress::build_design(x10, reduced), y);
            // Removing a term cannot decrease SSE; clamp roundoff.
            raw[k] = std::max(fit.residuals.squaredNorm() - full_sse, 0.0);
        }
    }

    double total = 0.0;
    for (double v : raw) total += v;
    if (total == 0.0)
        throw NumericError("rank_contributions: all contributions are zero");

    std::vector<std::size_t> order(terms.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return raw[a] > raw[b]; });

    ContributionRanking ranking;
    ranking.method = method;
    for (std::size_t r = 0; r < order.size(); ++r)
        ranking.entries.push_back({static_cast<int>(r + 1), terms[order[r]],
                                   raw[order[r]] / total * 100.0});
    return ranking;
}

} // namespace attribute
} // namespace sectorcast
