#pragma once

#include "sectorcast/dataset.hpp"
#include "sectorcast/regress.hpp"

#include <Eigen/Dense>
#include <vector>

namespace sectorcast {

struct VifReport {
    std::array<double, kNumIndicators> vif{};
    double flag_threshold = 10.0;

    std::vector<int> flagged() const; // 1-based indicator indices over threshold
};

struct EliminationStep {
    int step = 0;
    TermId dropped;
    double p_value = 0.0;
};

struct EliminationTrace {
    std::vector<EliminationStep> steps;
    ModelSpec final_spec;
    double alpha = 0.05;
    bool heredity = true;
};

namespace select {

// 11x11 Pearson matrix over the 10 indicators plus the response (last row
// and column). high_pairs lists |r| > cutoff off-diagonal pairs.
struct CorrelationReport {
    Eigen::MatrixXd matrix;
    struct Pair { int a; int b; double r; }; // 0..9 indicators, 10 = wcp
    std::vector<Pair> high_pairs;
    double cutoff = 0.80;
};

CorrelationReport correlation_matrix(const Dataset& data);

// VIF_j = 1 / (1 - R^2_j) from regressing indicator j on the other nine.
VifReport vif(const Dataset& data);

// Stepwise backward elimination: refit, drop the single eligible term with
// the largest p-value above alpha, repeat. With heredity on, a main effect
// is ineligible while any of its interactions remains.
std::pair<ModelSpec, EliminationTrace> backward_eliminate(
    const Dataset& scaled_train, const ModelSpec& start, double alpha,
    bool heredity);

} // namespace select
} // namespace sectorcast
