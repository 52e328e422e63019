#include "sectorcast/model_io.hpp"
#include "sectorcast/errors.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace sectorcast::io {

using nlohmann::json;

json to_json(const JohnsonSbParams& p) {
    json j{{"gamma", p.gamma}, {"eta", p.eta}, {"xi", p.xi}, {"lambda", p.lambda}};
    if (p.fit_meta) {
        j["z"] = p.fit_meta->z;
        j["sw_p"] = p.fit_meta->sw_p;
    }
    return j;
}

JohnsonSbParams johnson_from_json(const json& j) {
    JohnsonSbParams p;
    p.gamma = j.at("gamma").get<double>();
    p.eta = j.at("eta").get<double>();
    p.xi = j.at("xi").get<double>();
    p.lambda = j.at("lambda").get<double>();
    if (j.contains("z"))
        p.fit_meta = JohnsonSbParams::FitMeta{j.at("z").get<double>(),
                                              j.value("sw_p", 0.0)};
    if (!(p.eta > 0.0) || !(p.lambda > 0.0))
        throw InputError("johnson_from_json: invalid parameters");
    return p;
}

json to_json(const FittedModel& model) {
    json terms = json::array();
    const auto& fit = model.fit;
    auto row = [&](const std::string& label, Eigen::Index idx) {
        return json{{"term", label},
                    {"estimate", fit.coef(idx)},
                    {"std_error", fit.std_errors.size() ? fit.std_errors(idx) : 0.0},
                    {"t", fit.t_stats.size() ? fit.t_stats(idx) : 0.0},
                    {"p", fit.p_values.size() ? fit.p_values(idx) : 0.0}};
    };
    terms.push_back(row("intercept", 0));
    for (std::size_t k = 0; k < model.spec.terms.size(); ++k)
        terms.push_back(row(model.spec.terms[k].label(),
                            static_cast<Eigen::Index>(k + 1)));

    json scaler{{"mean", model.scaler.mean}, {"stddev", model.scaler.stddev}};
    return json{{"schema_version", kSchemaVersion},
                {"coefficients", terms},
                {"r_squared", fit.r_squared},
                {"adj_r_squared", fit.adj_r_squared},
                {"sigma2", fit.sigma2},
                {"n_obs", fit.n_obs},
                {"n_params", fit.n_params},
                {"scaler", scaler},
                {"transform", to_json(model.transform)}};
}

FittedModel model_from_json(const json& j) {
    FittedModel model;
    const auto& terms = j.at("coefficients");
    if (terms.empty() || terms[0].at("term") != "intercept")
        throw InputError("model_from_json: first coefficient must be intercept");

    const auto k = static_cast<Eigen::Index>(terms.size());
    model.fit.coef.resize(k);
    model.fit.std_errors.resize(k);
    model.fit.t_stats.resize(k);
    model.fit.p_values.resize(k);
    for (Eigen::Index idx = 0; idx < k; ++idx) {
        const auto& t = terms[static_cast<std::size_t>(idx)];
        model.fit.coef(idx) = t.at("estimate").get<double>();
        model.fit.std_errors(idx) = t.value("std_error", 0.0);
        model.fit.t_stats(idx) = t.value("t", 0.0);
        model.fit.p_values(idx) = t.value("p", 0.0);
        if (idx > 0) model.spec.terms.push_back(parse_term(t.at("term")));
    }
    model.spec.validate();

    model.fit.r_squared = j.value("r_squared", 0.0);
    model.fit.adj_r_squared = j.value("adj_r_squared", 0.0);
    model.fit.sigma2 = j.value("sigma2", 0.0);
    model.fit.n_obs = j.value("n_obs", std::size_t{0});
    model.fit.n_params = static_cast<std::size_t>(k);

    const auto& scaler = j.at("scaler");
    for (int i = 0; i < kNumIndicators; ++i) {
        model.scaler.mean[i] = scaler.at("mean").at(i).get<double>();
        model.scaler.stddev[i] = scaler.at("stddev").at(i).get<double>();
    }
    model.transform = johnson_from_json(j.at("transform"));
    return model;
}

json to_json(const EliminationTrace& trace) {
    json steps = json::array();
    for (const auto& s : trace.steps)
        steps.push_back({{"step", s.step},
                         {"dropped", s.dropped.label()},
                         {"p_value", s.p_value}});
    json final_terms = json::array();
    for (const auto& t : trace.final_spec.terms) final_terms.push_back(t.label());
    return json{{"schema_version", kSchemaVersion},
                {"alpha", trace.alpha},
                {"heredity", trace.heredity},
                {"steps", steps},
                {"final_spec", final_terms}};
}

json to_json(const ValidationReport& report) {
    return json{{"schema_version", kSchemaVersion},
                {"r_squared", report.r_squared},
                {"adj_r_squared", report.adj_r_squared},
                {"train_rmse_transformed", report.train_rmse},
                {"msetr_transformed", report.msetr},
                {"mspe_transformed", report.mspe},
                {"per_fold_mse", report.per_fold_mse},
                {"k", report.k},
                {"repeats", report.repeats},
                {"seed", report.seed}};
}

json to_json(const DiagnosticsReport& report) {
    auto norm = [](const NormalityResult& r) {
        return json{{"test", r.test_name},
                    {"statistic", r.statistic},
                    {"p_value", r.p_value},
                    {"n", r.n}};
    };
    return json{{"schema_version", kSchemaVersion},
                {"mean_residual", report.mean_residual},
                {"sum_residual", report.sum_residual},
                {"shapiro_wilk", norm(report.shapiro)},
                {"anderson_darling", norm(report.anderson)},
                {"n_points", report.qq_points.size()}};
}

json to_json(const ContributionRanking& ranking) {
    json entries = json::array();
    for (const auto& e : ranking.entries)
        entries.push_back({{"rank", e.rank},
                           {"term", e.term.label()},
                           {"contribution_pct", e.contribution}});
    return json{{"schema_version", kSchemaVersion},
                {"method", to_string(ranking.method)},
                {"entries", entries}};
}

json to_json(const VifReport& report) {
    json values = json::object();
    for (int k = 0; k < kNumIndicators; ++k)
        values["X" + std::to_string(k + 1)] = report.vif[k];
    return json{{"schema_version", kSchemaVersion},
                {"vif", values},
                {"flag_threshold", report.flag_threshold},
                {"flagged", report.flagged()}};
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << j.dump(2) << '\n';
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_pairs_csv(const std::vector<std::pair<double, double>>& pairs,
                     const std::string& col_a, const std::string& col_b,
                     const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out.precision(17);
    out << col_a << ',' << col_b << '\n';
    for (const auto& [a, b] : pairs) out << a << ',' << b << '\n';
}

} // namespace sectorcast::io
