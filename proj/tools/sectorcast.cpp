// sectorcast: batch CLI around the index-price modeling pipeline.
// Subcommands: ingest, fit, predict, diagnose, validate, rank.

#include "sectorcast/attribute.hpp"
#include "sectorcast/dataset.hpp"
#include "sectorcast/diagnose.hpp"
#include "sectorcast/errors.hpp"
#include "sectorcast/johnson.hpp"
#include "sectorcast/model_io.hpp"
#include "sectorcast/refmodel.hpp"
#include "sectorcast/regress.hpp"
#include "sectorcast/select.hpp"
#include "sectorcast/validate.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sectorcast;

namespace {

struct RunConfig {
    std::string input;
    std::string out = ".";
    std::uint64_t seed = 20170106;
    double train_fraction = 0.8;
    double alpha = 0.05;
    bool heredity = true;
    std::size_t cv_k = 10;
    std::size_t cv_repeats = 5;
    std::uint64_t cv_seed = 20170106;
    std::string method = "partial_ss";
    bool quiet = false;
};

// Flat key = value config file with '#' comments. CLI flags of the same
// name override anything read here.
std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw InputError("config line " + std::to_string(line_no) +
                                 ": expected key = value");
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    for (const auto& [key, value] : parse_config_file(path)) {
        if (key == "input") cfg.input = value;
        else if (key == "out") cfg.out = value;
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "train_fraction") cfg.train_fraction = std::stod(value);
        else if (key == "alpha") cfg.alpha = std::stod(value);
        else if (key == "heredity") cfg.heredity = (value == "true" || value == "1");
        else if (key == "cv_k") cfg.cv_k = std::stoull(value);
        else if (key == "cv_repeats") cfg.cv_repeats = std::stoull(value);
        else if (key == "cv_seed") cfg.cv_seed = std::stoull(value);
        else if (key == "method") cfg.method = value;
        else if (key == "quiet") cfg.quiet = (value == "true" || value == "1");
        else throw InputError("unknown config key '" + key + "'");
    }
}

json effective_config(const RunConfig& cfg) {
    return json{{"input", cfg.input},
                {"out", cfg.out},
                {"seed", cfg.seed},
                {"train_fraction", cfg.train_fraction},
                {"alpha", cfg.alpha},
                {"heredity", cfg.heredity},
                {"cv_k", cfg.cv_k},
                {"cv_repeats", cfg.cv_repeats},
                {"cv_seed", cfg.cv_seed},
                {"method", cfg.method}};
}

void ensure_out_dir(const RunConfig& cfg) {
    if (!cfg.out.empty()) fs::create_directories(cfg.out);
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    return (fs::path(cfg.out) / name).string();
}

void note(const RunConfig& cfg, const std::string& msg) {
    if (!cfg.quiet) std::cout << msg << '\n';
}

// Forward-transform the response column; rows outside the fitted support
// are a hard error.
Dataset transform_response(const Dataset& data, const JohnsonSbParams& params) {
    Dataset out = data;
    for (auto& row : out.rows) row.wcp = johnson::forward(row.wcp, params);
    return out;
}

int cmd_ingest(const RunConfig& cfg, const std::string& company_csv,
               const std::string& index_csv) {
    ensure_out_dir(cfg);
    if (!company_csv.empty()) {
        auto records = load_company_csv(company_csv);
        auto weeks = aggregate_companies(records);
        // Company files carry only the six financial indicators; emit the
        // partial table and let callers join economic columns + wcp.
        std::ofstream out(out_path(cfg, "aggregated.csv"));
        if (!out) throw InputError("cannot write aggregated.csv");
        out << "week_start";
        for (int k = 0; k < 6; ++k) out << ',' << kIndicatorColumns[k];
        out << '\n';
        out.precision(17);
        for (const auto& w : weeks) {
            out << w.week_start;
            for (double v : w.values) out << ',' << v;
            out << '\n';
        }
        note(cfg, "wrote " + out_path(cfg, "aggregated.csv") + " (" +
                      std::to_string(weeks.size()) + " weeks)");
        return 0;
    }
    auto data = load_csv(index_csv);
    save_csv(data, out_path(cfg, "dataset.csv"));
    note(cfg, "wrote " + out_path(cfg, "dataset.csv") + " (" +
                  std::to_string(data.size()) + " rows)");
    return 0;
}

int cmd_fit(const RunConfig& cfg) {
    ensure_out_dir(cfg);
    auto data = load_csv(cfg.input);
    if (data.size() < kMinFitRows)
        throw DatasetTooSmall("fit: need at least " +
                              std::to_string(kMinFitRows) + " rows, have " +
                              std::to_string(data.size()));

    // Scale indicators, normalize the response, then split.
    auto [scaled, scaler] = standardize(data);
    const auto transform = johnson::fit_sb(data.response());
    auto transformed = transform_response(scaled, transform);

    SplitSpec split_spec{cfg.train_fraction, cfg.seed};
    auto [train, test] = split(transformed, split_spec);

    // Advisory collinearity reports on the raw dataset.
    const auto corr = select::correlation_matrix(data);
    const auto vif_report = select::vif(data);
    io::write_json(io::to_json(vif_report), out_path(cfg, "vif.json"));

    const auto start = ModelSpec::full_interaction();
    auto [final_spec, trace] =
        select::backward_eliminate(train, start, cfg.alpha, cfg.heredity);

    auto model = regress::fit_model(train, final_spec, scaler, transform);
    auto diag = diagnose::residual_diagnostics(model);

    json model_json = io::to_json(model);
    model_json["config"] = effective_config(cfg);
    io::write_json(model_json, out_path(cfg, "model.json"));

    json trace_json = io::to_json(trace);
    trace_json["config"] = effective_config(cfg);
    io::write_json(trace_json, out_path(cfg, "trace.json"));

    io::write_json(io::to_json(diag), out_path(cfg, "diagnostics.json"));
    io::write_pairs_csv(diag.qq_points, "theoretical", "sample",
                        out_path(cfg, "qq.csv"));
    io::write_pairs_csv(diag.residual_vs_fitted, "fitted", "residual",
                        out_path(cfg, "residual_vs_fitted.csv"));
    save_csv(test, out_path(cfg, "test_split.csv"));

    std::ostringstream summary;
    summary << "fit: " << final_spec.size() << " terms retained after "
            << trace.steps.size() << " eliminations, R^2 = " << std::fixed
            << std::setprecision(4) << model.fit.r_squared
            << ", adj R^2 = " << model.fit.adj_r_squared;
    if (!corr.high_pairs.empty())
        summary << "\nwarning: " << corr.high_pairs.size()
                << " indicator pair(s) with |r| > " << corr.cutoff;
    note(cfg, summary.str());
    return 0;
}

int cmd_predict(const RunConfig& cfg, const std::string& model_path,
                const std::string& rows_csv, bool published) {
    ensure_out_dir(cfg);
    FittedModel model = published
                            ? refmodel::as_fitted_model()
                            : io::model_from_json(io::read_json(model_path));

    // Rows file: the ten indicator columns, any order, optional extras.
    std::ifstream in(rows_csv);
    if (!in) throw InputError("cannot open " + rows_csv);
    std::string line;
    if (!std::getline(in, line)) throw MissingColumn("empty file " + rows_csv);

    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) header.push_back(f);
    }
    std::array<int, kNumIndicators> col_of;
    col_of.fill(-1);
    for (std::size_t c = 0; c < header.size(); ++c) {
        std::string h = header[c];
        for (auto& ch : h) ch = static_cast<char>(std::tolower(ch));
        for (int k = 0; k < kNumIndicators; ++k)
            if (h == kIndicatorColumns[k]) col_of[k] = static_cast<int>(c);
    }
    for (int k = 0; k < kNumIndicators; ++k)
        if (col_of[k] < 0)
            throw MissingColumn("missing column '" + kIndicatorColumns[k] +
                                "' in " + rows_csv);

    std::ofstream out(out_path(cfg, "predictions.csv"));
    if (!out) throw InputError("cannot write predictions.csv");
    out << "wcp_transformed,wcp\n";
    out.precision(17);
    std::size_t n = 0;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        std::array<double, kNumIndicators> raw{};
        for (int k = 0; k < kNumIndicators; ++k)
            raw[k] = std::stod(fields.at(static_cast<std::size_t>(col_of[k])));
        const double t = regress::predict_transformed(model, raw);
        out << t << ',' << johnson::inverse(t, model.transform) << '\n';
        ++n;
    }
    note(cfg, "wrote " + out_path(cfg, "predictions.csv") + " (" +
                  std::to_string(n) + " rows)");
    return 0;
}

int cmd_diagnose(const RunConfig& cfg, const std::string& model_path) {
    ensure_out_dir(cfg);
    auto stored = io::model_from_json(io::read_json(model_path));
    auto data = load_csv(cfg.input);

    // Re-evaluate the stored spec on the given dataset to recover residuals.
    auto scaled = data;
    for (auto& row : scaled.rows)
        for (int k = 0; k < kNumIndicators; ++k)
            row.x[k] = stored.scaler.scale(k, row.x[k]);
    auto transformed = transform_response(scaled, stored.transform);
    auto model = regress::fit_model(transformed, stored.spec, stored.scaler,
                                    stored.transform);

    auto diag = diagnose::residual_diagnostics(model);
    io::write_json(io::to_json(diag), out_path(cfg, "diagnostics.json"));
    io::write_pairs_csv(diag.qq_points, "theoretical", "sample",
                        out_path(cfg, "qq.csv"));
    io::write_pairs_csv(diag.residual_vs_fitted, "fitted", "residual",
                        out_path(cfg, "residual_vs_fitted.csv"));
    std::ostringstream msg;
    msg << "diagnose: shapiro p = " << diag.shapiro.p_value
        << ", anderson p = " << diag.anderson.p_value;
    note(cfg, msg.str());
    return 0;
}

int cmd_validate(const RunConfig& cfg, const std::string& model_path,
                 const std::string& pairs_csv) {
    ensure_out_dir(cfg);

    if (!pairs_csv.empty()) {
        // Direct metric path over (observed, predicted) pairs.
        std::ifstream in(pairs_csv);
        if (!in) throw InputError("cannot open " + pairs_csv);
        std::string line;
        std::getline(in, line); // header
        std::vector<double> obs, pred;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            std::stringstream ss(line);
            std::string f;
            std::vector<std::string> fields;
            while (std::getline(ss, f, ',')) fields.push_back(f);
            // Last two columns are observed, predicted.
            const auto nf = fields.size();
            obs.push_back(std::stod(fields.at(nf - 2)));
            pred.push_back(std::stod(fields.at(nf - 1)));
        }
        json report{{"schema_version", io::kSchemaVersion},
                    {"n", obs.size()},
                    {"rmse", validate::rmse(obs, pred)},
                    {"mape_pct", validate::mape(obs, pred)},
                    {"rrmse_pct", validate::rrmse(obs, pred)},
                    {"r_squared", validate::r_squared(obs, pred)},
                    {"config", effective_config(cfg)}};
        io::write_json(report, out_path(cfg, "validation.json"));
        std::ostringstream msg;
        msg << "validate: rmse = " << report["rmse"].get<double>()
            << ", mape = " << report["mape_pct"].get<double>() << "%";
        note(cfg, msg.str());
        return 0;
    }

    auto stored = io::model_from_json(io::read_json(model_path));
    auto data = load_csv(cfg.input);
    auto scaled = data;
    for (auto& row : scaled.rows)
        for (int k = 0; k < kNumIndicators; ++k)
            row.x[k] = stored.scaler.scale(k, row.x[k]);
    auto transformed = transform_response(scaled, stored.transform);

    auto cv = validate::kfold_cv(transformed, stored.spec, cfg.cv_k,
                                 cfg.cv_repeats, cfg.cv_seed);

    // Price-scale metrics from the stored coefficients.
    std::vector<double> obs, pred;
    for (const auto& row : data.rows) {
        obs.push_back(row.wcp);
        pred.push_back(regress::predict_price(stored, row.x));
    }

    json report = io::to_json(cv);
    report["price_rmse"] = validate::rmse(obs, pred);
    report["price_mape_pct"] = validate::mape(obs, pred);
    report["price_rrmse_pct"] = validate::rrmse(obs, pred);
    report["config"] = effective_config(cfg);
    io::write_json(report, out_path(cfg, "validation.json"));

    std::ostringstream msg;
    msg << std::setprecision(7) << "validate: MSETr = " << cv.msetr
        << ", MSPE = " << cv.mspe
        << ", price RMSE = " << report["price_rmse"].get<double>();
    note(cfg, msg.str());
    return 0;
}

int cmd_rank(const RunConfig& cfg, const std::string& model_path) {
    ensure_out_dir(cfg);
    auto stored = io::model_from_json(io::read_json(model_path));
    auto data = load_csv(cfg.input);
    auto scaled = data;
    for (auto& row : scaled.rows)
        for (int k = 0; k < kNumIndicators; ++k)
            row.x[k] = stored.scaler.scale(k, row.x[k]);
    auto transformed = transform_response(scaled, stored.transform);

    auto ranking = attribute::rank_contributions(
        stored, transformed, parse_contribution_method(cfg.method));

    json report = io::to_json(ranking);
    report["config"] = effective_config(cfg);
    io::write_json(report, out_path(cfg, "ranking.json"));

    if (!cfg.quiet) {
        std::cout << std::left << std::setw(6) << "Rank" << std::setw(16)
                  << "Term" << "Contribution %\n";
        for (const auto& e : ranking.entries)
            std::cout << std::left << std::setw(6) << e.rank << std::setw(16)
                      << e.term.label() << std::fixed << std::setprecision(2)
                      << e.contribution << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weekly index closing price modeling pipeline"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env_out = std::getenv("SECTORCAST_OUT")) cfg.out = env_out;

    std::string config_path;
    app.add_option("--config", config_path, "key = value config file");
    auto* seed_opt = app.add_option("--seed", cfg.seed, "master RNG seed");
    auto* out_opt = app.add_option("--out", cfg.out, "output directory");
    auto* quiet_flag = app.add_flag("--quiet", cfg.quiet, "suppress stdout");

    std::string company_csv, index_csv, model_path, rows_csv, pairs_csv;
    bool published = false;

    auto* ingest = app.add_subcommand("ingest", "aggregate or canonicalize input data");
    ingest->fallthrough();
    ingest->add_option("--company", company_csv, "per-company weekly CSV");
    ingest->add_option("--index", index_csv, "index-level weekly CSV");

    auto* fit = app.add_subcommand("fit", "run the full modeling pipeline");
    fit->fallthrough();
    auto* input_opt = fit->add_option("--input", cfg.input, "index-level CSV");
    auto* frac_opt = fit->add_option("--train_fraction", cfg.train_fraction,
                                     "train split fraction");
    auto* alpha_opt = fit->add_option("--alpha", cfg.alpha, "elimination alpha");
    auto* heredity_opt =
        fit->add_option("--heredity", cfg.heredity, "weak heredity (0/1)");

    auto* predict = app.add_subcommand("predict", "predict prices for indicator rows");
    predict->fallthrough();
    predict->add_option("--model", model_path, "model JSON");
    predict->add_option("--rows", rows_csv, "indicator rows CSV")->required();
    predict->add_flag("--published", published,
                      "use the built-in published model (standardized inputs)");

    auto* diagnose_cmd = app.add_subcommand("diagnose", "residual diagnostics");
    diagnose_cmd->fallthrough();
    diagnose_cmd->add_option("--model", model_path, "model JSON")->required();
    auto* diag_input = diagnose_cmd->add_option("--input", cfg.input, "dataset CSV");

    auto* validate_cmd = app.add_subcommand("validate", "metrics and k-fold CV");
    validate_cmd->fallthrough();
    validate_cmd->add_option("--model", model_path, "model JSON");
    auto* val_input = validate_cmd->add_option("--input", cfg.input, "dataset CSV");
    validate_cmd->add_option("--pairs", pairs_csv,
                             "CSV whose last two columns are observed,predicted");
    auto* cvk_opt = validate_cmd->add_option("--cv_k", cfg.cv_k, "fold count");
    auto* cvr_opt =
        validate_cmd->add_option("--cv_repeats", cfg.cv_repeats, "repeats");
    auto* cvs_opt = validate_cmd->add_option("--cv_seed", cfg.cv_seed, "CV seed");

    auto* rank = app.add_subcommand("rank", "contribution ranking");
    rank->fallthrough();
    rank->add_option("--model", model_path, "model JSON")->required();
    auto* rank_input = rank->add_option("--input", cfg.input, "dataset CSV");
    auto* method_opt =
        rank->add_option("--method", cfg.method, "coef_share | partial_ss");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) {
            // Flags win over config-file values: re-read flag values after
            // applying the file only when the flag was not given.
            RunConfig file_cfg = cfg;
            apply_config_file(file_cfg, config_path);
            if (!*seed_opt) cfg.seed = file_cfg.seed;
            if (!*out_opt) cfg.out = file_cfg.out;
            if (!*quiet_flag) cfg.quiet = file_cfg.quiet;
            if (!*input_opt && !*diag_input && !*val_input && !*rank_input)
                cfg.input = file_cfg.input;
            if (!*frac_opt) cfg.train_fraction = file_cfg.train_fraction;
            if (!*alpha_opt) cfg.alpha = file_cfg.alpha;
            if (!*heredity_opt) cfg.heredity = file_cfg.heredity;
            if (!*cvk_opt) cfg.cv_k = file_cfg.cv_k;
            if (!*cvr_opt) cfg.cv_repeats = file_cfg.cv_repeats;
            if (!*cvs_opt) cfg.cv_seed = file_cfg.cv_seed;
            if (!*method_opt) cfg.method = file_cfg.method;
        }
        if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0))
            throw InputError("train_fraction must be in (0, 1)");
        if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
            throw InputError("alpha must be in (0, 1)");

        if (*ingest) {
            if (company_csv.empty() == index_csv.empty())
                throw InputError("ingest: give exactly one of --company / --index");
            return cmd_ingest(cfg, company_csv, index_csv);
        }
        if (*fit) {
            if (cfg.input.empty()) throw InputError("fit: --input required");
            return cmd_fit(cfg);
        }
        if (*predict) {
            if (!published && model_path.empty())
                throw InputError("predict: --model or --published required");
            return cmd_predict(cfg, model_path, rows_csv, published);
        }
        if (*diagnose_cmd) {
            if (cfg.input.empty()) throw InputError("diagnose: --input required");
            return cmd_diagnose(cfg, model_path);
        }
        if (*validate_cmd) {
            if (pairs_csv.empty() && (model_path.empty() || cfg.input.empty()))
                throw InputError("validate: give --pairs or --model + --input");
            return cmd_validate(cfg, model_path, pairs_csv);
        }
        if (*rank) {
            if (cfg.input.empty()) throw InputError("rank: --input required");
            return cmd_rank(cfg, model_path);
        }
    } catch (const NumericError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
