#pragma once

#include "sectorcast/dataset.hpp"
#include "sectorcast/johnson.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace sectorcast {

// A model term: either a main effect Main(i) or a pairwise interaction
// Interaction(i, j) with 1 <= i < j <= 10. j == 0 marks a main effect.
struct TermId {
    int i = 0;
    int j = 0;

    static TermId main(int i) { return {i, 0}; }
    static TermId interaction(int i, int j);

    bool is_interaction() const { return j != 0; }
    std::string label() const;

    friend bool operator==(const TermId&, const TermId&) = default;
    // Mains first in index order, then interactions lexicographically.
    friend auto operator<=>(const TermId& a, const TermId& b) {
        if (auto c = (a.j != 0) <=> (b.j != 0); c != 0) return c;
        if (auto c = a.i <=> b.i; c != 0) return c;
        return a.j <=> b.j;
    }
};

TermId parse_term(const std::string& label);

struct ModelSpec {
    std::vector<TermId> terms; // kept sorted, duplicates rejected

    static ModelSpec full_interaction(); // 10 mains + 45 interactions
    static ModelSpec mains_only();

    bool contains(const TermId& t) const;
    void validate() const;
    std::size_t size() const { return terms.size(); }
};

// Core OLS output on a given design matrix.
struct OlsFit {
    Eigen::VectorXd coef;       // [intercept, terms...]
    Eigen::VectorXd std_errors;
    Eigen::VectorXd t_stats;
    Eigen::VectorXd p_values;
    Eigen::VectorXd residuals;
    Eigen::VectorXd fitted;
    Eigen::VectorXd leverage;   // hat-matrix diagonal
    double sigma2 = 0.0;        // SSE / (n - k - 1)
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    std::size_t n_obs = 0;
    std::size_t n_params = 0;
};

struct FittedModel {
    ModelSpec spec;
    OlsFit fit;
    ScalerParams scaler;
    JohnsonSbParams transform;

    double intercept() const { return fit.coef(0); }
    double coefficient(const TermId& t) const;
};

namespace regress {

// Scaled indicator matrix (n x 10) and transformed response from a dataset
// whose wcp column already holds the transformed response.
Eigen::MatrixXd indicator_matrix(const Dataset& data);
Eigen::VectorXd response_vector(const Dataset& data);

// Columns: [intercept, mains in index order, interactions lexicographic].
Eigen::MatrixXd build_design(const Eigen::MatrixXd& x10, const ModelSpec& spec);

// Householder-QR least squares with t/p inference. Rank deficiency is a
// hard error naming a dependent column.
OlsFit fit_ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

FittedModel fit_model(const Dataset& scaled_data, const ModelSpec& spec,
                      const ScalerParams& scaler, const JohnsonSbParams& transform);

// Evaluate the linear predictor on one raw indicator row (standardizes
// with the stored scaler first).
double predict_transformed(const FittedModel& model,
                           const std::array<double, kNumIndicators>& raw);

// Inverse-Johnson of predict_transformed; price in index points.
double predict_price(const FittedModel& model,
                     const std::array<double, kNumIndicators>& raw);

} // namespace regress
} // namespace sectorcast
