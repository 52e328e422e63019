#include "sectorcast/regress.hpp"
#include "sectorcast/errors.hpp"
#include "sectorcast/stats.hpp"

#include <algorithm>
#include <cmath>

namespace sectorcast {

TermId TermId::interaction(int i, int j) {
    if (!(1 <= i && i < j && j <= kNumIndicators))
        throw InputError("Interaction indices must satisfy 1 <= i < j <= 10");
    return {i, j};
}

std::string TermId::label() const {
    if (!is_interaction()) return "X" + std::to_string(i);
    return "X" + std::to_string(i) + "*X" + std::to_string(j);
}

TermId parse_term(const std::string& label) {
    const auto star = label.find('*');
    auto parse_x = [&](const std::string& s) {
        if (s.size() < 2 || (s[0] != 'X' && s[0] != 'x'))
            throw InputError("bad term label '" + label + "'");
        const int idx = std::stoi(s.substr(1));
        if (idx < 1 || idx > kNumIndicators)
            throw InputError("term index out of range in '" + label + "'");
        return idx;
    };
    if (star == std::string::npos) return TermId::main(parse_x(label));
    return TermId::interaction(parse_x(label.substr(0, star)),
                               parse_x(label.substr(star + 1)));
}

ModelSpec ModelSpec::full_interaction() {
    ModelSpec spec = mains_only();
    for (int i = 1; i <= kNumIndicators; ++i)
        for (int j = i + 1; j <= kNumIndicators; ++j)
            spec.terms.push_back(TermId::interaction(i, j));
    spec.validate();
    return spec;
}

ModelSpec ModelSpec::mains_only() {
    ModelSpec spec;
    for (int i = 1; i <= kNumIndicators; ++i)
        spec.terms.push_back(TermId::main(i));
    return spec;
}

bool ModelSpec::contains(const TermId& t) const {
    return std::find(terms.begin(), terms.end(), t) != terms.end();
}

void ModelSpec::validate() const {
    for (std::size_t a = 0; a < terms.size(); ++a) {
        const auto& t = terms[a];
        if (t.i < 1 || t.i > kNumIndicators ||
            (t.is_interaction() && (t.j <= t.i || t.j > kNumIndicators)))
            throw InputError("invalid term " + t.label());
        for (std::size_t b = a + 1; b < terms.size(); ++b)
            if (terms[b] == t)
                throw InputError("duplicate term " + t.label());
    }
}

double FittedModel::coefficient(const TermId& t) const {
    for (std::size_t k = 0; k < spec.terms.size(); ++k)
        if (spec.terms[k] == t) return fit.coef(static_cast<Eigen::Index>(k + 1));
    throw InputError("term " + t.label() + " not in model");
}

namespace regress {

Eigen::MatrixXd indicator_matrix(const Dataset& data) {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(data.size()), kNumIndicators);
    for (Eigen::Index r = 0; r < x.rows(); ++r)
        for (int k = 0; k < kNumIndicators; ++k)
            x(r, k) = data.rows[static_cast<std::size_t>(r)].x[k];
    return x;
}

Eigen::VectorXd response_vector(const Dataset& data) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(data.size()));
    for (Eigen::Index r = 0; r < y.size(); ++r)
        y(r) = data.rows[static_cast<std::size_t>(r)].wcp;
    return y;
}

Eigen::MatrixXd build_design(const Eigen::MatrixXd& x10, const ModelSpec& spec) {
    spec.validate();
    const Eigen::Index n = x10.rows();
    Eigen::MatrixXd X(n, static_cast<Eigen::Index>(spec.size() + 1));
    X.col(0).setOnes();
    // Column order follows the sorted spec: mains, then interactions.
    std::vector<TermId> sorted = spec.terms;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        const auto& t = sorted[k];
        const auto col = static_cast<Eigen::Index>(k + 1);
        if (t.is_interaction())
            X.col(col) = x10.col(t.i - 1).cwiseProduct(x10.col(t.j - 1));
        else
            X.col(col) = x10.col(t.i - 1);
    }
    return X;
}

OlsFit fit_ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    const Eigen::Index n = X.rows();
    const Eigen::Index k = X.cols();
    if (y.size() != n) throw LengthMismatch("fit_ols: X rows != y length");
    if (n <= k)
        throw InsufficientObservations("fit_ols: need n_obs > n_params");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < k) {
        // Name one column involved in the dependency.
        const auto perm = qr.colsPermutation().indices();
        const Eigen::Index dep = perm(qr.rank());
        throw RankDeficient("fit_ols: design column " + std::to_string(dep) +
                            " is linearly dependent");
    }

    OlsFit out;
    out.n_obs = static_cast<std::size_t>(n);
    out.n_params = static_cast<std::size_t>(k);
    out.coef = qr.solve(y);
    out.fitted = X * out.coef;
    out.residuals = y - out.fitted;

    const double sse = out.residuals.squaredNorm();
    const double ybar = y.mean();
    const double sst = (y.array() - ybar).square().sum();
    const double df = static_cast<double>(n - k);
    out.sigma2 = sse / df;
    out.r_squared = (sst > 0.0) ? 1.0 - sse / sst : 1.0;
    out.adj_r_squared =
        1.0 - (1.0 - out.r_squared) * static_cast<double>(n - 1) / df;

    // (X'X)^-1 from the thin-QR factor R.
    const Eigen::MatrixXd R =
        qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd Rinv =
        R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const Eigen::MatrixXd perm = qr.colsPermutation();
    const Eigen::MatrixXd xtx_inv = perm * Rinv * Rinv.transpose() * perm.transpose();

    out.std_errors = (out.sigma2 * xtx_inv.diagonal().array()).sqrt();
    out.t_stats = out.coef.array() / out.std_errors.array();
    out.p_values.resize(k);
    for (Eigen::Index j = 0; j < k; ++j)
        out.p_values(j) = stats::t_two_sided_p(out.t_stats(j), df);

    out.leverage.resize(n);
    for (Eigen::Index r = 0; r < n; ++r)
        out.leverage(r) = X.row(r) * xtx_inv * X.row(r).transpose();
    return out;
}

FittedModel fit_model(const Dataset& scaled_data, const ModelSpec& spec,
                      const ScalerParams& scaler,
                      const JohnsonSbParams& transform) {
    ModelSpec sorted = spec;
    std::sort(sorted.terms.begin(), sorted.terms.end());
    const auto x10 = indicator_matrix(scaled_data);
    const auto X = build_design(x10, sorted);
    FittedModel model;
    model.spec = std::move(sorted);
    model.fit = fit_ols(X, response_vector(scaled_data));
    model.scaler = scaler;
    model.transform = transform;
    return model;
}

double predict_transformed(const FittedModel& model,
                           const std::array<double, kNumIndicators>& raw) {
    std::array<double, kNumIndicators> z{};
    for (int k = 0; k < kNumIndicators; ++k) {
        if (!std::isfinite(raw[k]))
            throw NonFiniteInput("predict: non-finite indicator value");
        z[k] = model.scaler.scale(k, raw[k]);
    }
    double t = model.intercept();
    for (std::size_t k = 0; k < model.spec.terms.size(); ++k) {
        const auto& term = model.spec.terms[k];
        const double c = model.fit.coef(static_cast<Eigen::Index>(k + 1));
        t += term.is_interaction() ? c * z[term.i - 1] * z[term.j - 1]
                                   : c * z[term.i - 1];
    }
    return t;
}

double predict_price(const FittedModel& model,
                     const std::array<double, kNumIndicators>& raw) {
    return johnson::inverse(predict_transformed(model, raw), model.transform);
}

} // namespace regress
} // namespace sectorcast
