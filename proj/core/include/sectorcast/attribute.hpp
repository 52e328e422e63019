#pragma once

#include "sectorcast/dataset.hpp"
#include "sectorcast/regress.hpp"

#include <string>
#include <vector>

namespace sectorcast {

enum class ContributionMethod { CoefShare, PartialSs };

std::string to_string(ContributionMethod m);
ContributionMethod parse_contribution_method(const std::string& s);

struct ContributionRanking {
    struct Entry {
        int rank = 0; // 1-based
        TermId term;
        double contribution = 0.0; // percent
    };
    std::vector<Entry> entries; // non-increasing contribution
    ContributionMethod method = ContributionMethod::PartialSs;
};

namespace attribute {

// coef_share: |beta_j| / sum |beta| * 100, intercept excluded.
// partial_ss: delta-SSE share from removing each term alone and refitting.
ContributionRanking rank_contributions(const FittedModel& model,
                                       const Dataset& scaled_data,
                                       ContributionMethod method);

} // namespace attribute
} // namespace sectorcast
