#include "sectorcast/refmodel.hpp"
#include "sectorcast/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sectorcast {

ModelSpec PublishedModel::spec() const {
    ModelSpec s;
    for (const auto& [term, coef] : coefficients) s.terms.push_back(term);
    std::sort(s.terms.begin(), s.terms.end());
    return s;
}

double PublishedModel::coefficient(const TermId& t) const {
    for (const auto& [term, coef] : coefficients)
        if (term == t) return coef;
    throw InputError("term " + t.label() + " not in published model");
}

std::vector<double> Table3Fixture::observed() const {
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(r.observed);
    return v;
}

std::vector<double> Table3Fixture::predicted() const {
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(r.predicted);
    return v;
}

namespace refmodel {

const PublishedModel& published_spec() {
    static const PublishedModel model = [] {
        PublishedModel m;
        m.intercept = 0.0732;
        auto main = [](int i) { return TermId::main(i); };
        auto inter = [](int i, int j) { return TermId::interaction(i, j); };
        m.coefficients = {
            {main(1), 0.0070},      {main(2), -0.0504},
            {main(3), 0.1067},      {main(4), 0.0578},
            {main(5), 0.0941},      {main(6), -0.0041},
            {main(7), -0.0168},     {main(8), -0.0120},
            {main(9), 0.0211},      {main(10), 0.6781},
            {inter(1, 3), 0.1013},  {inter(1, 9), -0.0864},
            {inter(2, 6), 0.0351},  {inter(2, 10), -0.0989},
            {inter(2, 7), -0.1139}, {inter(4, 7), -0.0380},
            {inter(5, 7), -0.6059}, {inter(5, 10), 0.6054},
            {inter(8, 9), 0.0331},
        };
        m.transform.gamma = 0.4091;
        m.transform.eta = 1.2208;
        m.transform.xi = 711.5838;
        m.transform.lambda = 1082.963;
        return m;
    }();
    return model;
}

double predict_published_transformed(
    const std::array<double, kNumIndicators>& z) {
    for (double v : z)
        if (!std::isfinite(v))
            throw NonFiniteInput("predict_published: non-finite input");
    const auto& m = published_spec();
    double t = m.intercept;
    for (const auto& [term, coef] : m.coefficients)
        t += term.is_interaction() ? coef * z[term.i - 1] * z[term.j - 1]
                                   : coef * z[term.i - 1];
    return t;
}

double predict_published(const std::array<double, kNumIndicators>& z) {
    return johnson::inverse(predict_published_transformed(z),
                            published_spec().transform);
}

const Table3Fixture& table3_fixtures() {
    static const Table3Fixture fixture = [] {
        Table3Fixture f;
        f.rows = {
            {6, 865.88, 862.88},     {12, 897.57, 892.78},
            {15, 904.64, 927.23},    {23, 951.57, 949.24},
            {24, 957.79, 944.71},    {27, 979.69, 976.07},
            {28, 979.93, 982.68},    {39, 1018.15, 1019.11},
            {42, 1047.08, 1066.12},  {46, 1087.60, 1046.87},
            {49, 1103.12, 1110.35},  {65, 1157.09, 1131.20},
            {69, 1180.28, 1161.03},  {74, 1184.62, 1178.35},
            {75, 1203.88, 1187.35},  {81, 1206.58, 1211.22},
            {82, 1279.16, 1211.22},  {103, 1283.32, 1279.86},
            {106, 1300.75, 1293.12}, {111, 1311.17, 1330.36},
            {112, 1320.19, 1315.09}, {114, 1370.62, 1339.02},
            {121, 1374.82, 1351.95}, {123, 1378.90, 1358.36},
            {125, 1410.34, 1387.87}, {131, 1415.14, 1396.16},
            {133, 1421.26, 1416.56}, {135, 1424.52, 1412.52},
            {137, 1426.76, 1456.27}, {146, 1542.98, 1530.36},
        };
        return f;
    }();
    return fixture;
}

FittedModel as_fitted_model() {
    const auto& pub = published_spec();
    FittedModel model;
    model.spec = pub.spec();
    const auto k = static_cast<Eigen::Index>(model.spec.size() + 1);
    model.fit.coef = Eigen::VectorXd::Zero(k);
    model.fit.coef(0) = pub.intercept;
    for (std::size_t i = 0; i < model.spec.terms.size(); ++i)
        model.fit.coef(static_cast<Eigen::Index>(i + 1)) =
            pub.coefficient(model.spec.terms[i]);
    model.fit.std_errors = Eigen::VectorXd::Zero(k);
    model.fit.t_stats = Eigen::VectorXd::Zero(k);
    model.fit.p_values = Eigen::VectorXd::Zero(k);
    model.fit.n_params = static_cast<std::size_t>(k);
    // Identity scaler: inputs are interpreted as already standardized.
    model.scaler.mean.fill(0.0);
    model.scaler.stddev.fill(1.0);
    model.transform = pub.transform;
    return model;
}

} // namespace refmodel
} // namespace sectorcast
