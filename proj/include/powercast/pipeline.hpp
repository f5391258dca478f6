#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "powercast/csv.hpp"
#include "powercast/dataset.hpp"
#include "powercast/default_schema.hpp"
#include "powercast/errors.hpp"
#include "powercast/json_io.hpp"
#include "powercast/metrics.hpp"
#include "powercast/mlp.hpp"
#include "powercast/normalizer.hpp"
#include "powercast/permimp.hpp"
#include "powercast/schema.hpp"
#include "powercast/split.hpp"
#include "powercast/svg.hpp"
#include "powercast/synthgen.hpp"

namespace powercast {

/// Everything the commands need, filled from flags and/or a JSON config file.
struct RunConfig {
    std::string data;       // dataset CSV
    std::string schema;     // schema JSON; empty = bundled default schema
    std::string model;      // model JSON
    std::string out;        // output directory
    std::string split;      // split plan JSON
    std::string testb_ids;  // manual hold-out file, one city_id per line

    double val_fraction = 0.04;
    double testa_fraction = 0.04;

    std::size_t n_cities = 300;
    double noise_sigma = 0.05;

    MlpConfig mlp;
    std::size_t restarts = 3;

    std::vector<std::string> pi_features;  // empty = the core features
    std::size_t pi_reps = 10;
    PiMode pi_mode = PiMode::mean_abs_diff;

    std::uint64_t seed = 0;
    bool timestamp = true;
};

namespace pipeline_detail {

inline void require(const std::string& value, const char* what) {
    if (value.empty()) throw Error(Errc::config_error, std::string("missing required ") + what);
}

inline void require_exists(const std::string& path) {
    if (!std::filesystem::exists(path))
        throw Error(Errc::io_error, "input '" + path + "' does not exist");
}

inline std::filesystem::path out_dir(const RunConfig& cfg) {
    require(cfg.out, "--out directory");
    std::error_code ec;
    std::filesystem::create_directories(cfg.out, ec);
    if (ec) throw Error(Errc::io_error, "cannot create output directory '" + cfg.out + "'");
    return std::filesystem::path(cfg.out);
}

inline FeatureSchema schema_for(const RunConfig& cfg) {
    if (cfg.schema.empty()) return default_schema();
    require_exists(cfg.schema);
    return jsonio::load_schema(cfg.schema);
}

inline Dataset dataset_for(const RunConfig& cfg, const FeatureSchema& schema) {
    require(cfg.data, "--data CSV");
    require_exists(cfg.data);
    return load_csv(cfg.data, schema);
}

inline SplitPlan split_for(const RunConfig& cfg) {
    require(cfg.split, "--split plan");
    require_exists(cfg.split);
    return jsonio::load_split(cfg.split);
}

inline MlpModel model_for(const RunConfig& cfg, const FeatureSchema& schema) {
    require(cfg.model, "--model file");
    require_exists(cfg.model);
    MlpModel m = jsonio::load_model(cfg.model);
    if (m.schema_hash != schema.hash())
        throw Error(Errc::config_error,
                    "schema hash mismatch: model '" + cfg.model +
                        "' was trained against a different schema");
    return m;
}

inline std::vector<std::string> read_id_file(const std::string& path) {
    require_exists(path);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");
    std::vector<std::string> ids;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) ids.push_back(line);
    }
    return ids;
}

inline std::string shortest(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

inline double parse_double(const std::string& s, const std::string& where) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw Error(Errc::unparseable_cell, where + ": bad number '" + s + "'");
    return v;
}

/// Rows of a split set as normalized training samples.
inline std::vector<Sample> to_samples(const Dataset& data, const Normalizer& norm,
                                      std::span<const std::string> ids) {
    std::vector<Sample> out;
    out.reserve(ids.size());
    for (const auto& id : ids) {
        const CityRecord& r = data.row(id);
        out.push_back({norm.normalize_features(r.features), norm.normalize_target(r.target)});
    }
    return out;
}

}  // namespace pipeline_detail

// ------------------------------------------------------------------- gen ---

struct GenOutputs {
    std::string data_csv;
    std::string schema_json;
    std::string ground_truth_json;
    std::size_t n_rows = 0;
};

/// Synthesizes a dataset. With the bundled schema this is the stock study;
/// with a custom schema the default signal features are kept when present,
/// otherwise the first (up to) three core features stand in.
inline GenOutputs run_gen(const RunConfig& cfg) {
    const auto dir = pipeline_detail::out_dir(cfg);
    SynthConfig sc = default_synth_config(cfg.seed);
    sc.n_cities = cfg.n_cities;
    sc.noise_sigma = cfg.noise_sigma;
    if (!cfg.schema.empty()) {
        sc.schema = pipeline_detail::schema_for(cfg);
        bool have_defaults = true;
        for (const auto& s : sc.signal_features)
            if (!sc.schema.find(s.name)) have_defaults = false;
        if (!have_defaults) {
            sc.signal_features.clear();
            std::vector<std::string> core = sc.schema.feature_names(FeatureCategory::core);
            if (core.empty()) core.push_back(sc.schema.feature(0).name);
            for (std::size_t i = 0; i < core.size() && i < 3; ++i) {
                const auto& fd = sc.schema.feature(sc.schema.index_of(core[i]));
                const auto p = synth_detail::feature_params(fd, sc.seed);
                sc.signal_features.push_back(
                    {core[i], 1.0 / (p.scale * p.total_sd()), Transform::linear});
            }
        }
    }

    auto [data, truth] = generate(sc);
    GenOutputs out;
    out.n_rows = data.n_rows();
    out.data_csv = (dir / "data.csv").string();
    out.schema_json = (dir / "schema.json").string();
    out.ground_truth_json = (dir / "ground_truth.json").string();
    save_csv(data, out.data_csv);
    jsonio::save_schema(sc.schema, out.schema_json);
    jsonio::save_ground_truth(truth, out.ground_truth_json);
    return out;
}

// ----------------------------------------------------------------- split ---

struct SplitOutputs {
    SplitPlan plan;
    std::string split_json;
};

inline SplitOutputs run_split(const RunConfig& cfg) {
    const auto dir = pipeline_detail::out_dir(cfg);
    const FeatureSchema schema = pipeline_detail::schema_for(cfg);
    const Dataset data = pipeline_detail::dataset_for(cfg, schema);
    std::vector<std::string> testb;
    if (!cfg.testb_ids.empty()) testb = pipeline_detail::read_id_file(cfg.testb_ids);

    SplitOutputs out;
    out.plan = split(data, testb, cfg.val_fraction, cfg.testa_fraction, cfg.seed);
    out.split_json = (dir / "split.json").string();
    jsonio::save_split(out.plan, out.split_json);
    return out;
}

// ----------------------------------------------------------------- train ---

struct TrainOutputs {
    TrainResult best;
    std::size_t best_restart = 0;
    double best_val_mse = 0.0;
    std::string model_json;
    std::string trace_csv;
};

/// Multi-restart training: restart k trains from init seed derived from
/// (seed, "restart", k); the model with the lowest best-epoch validation MSE
/// wins, ties to the lowest k. The winner gets the normalizer fitted on the
/// training rows and the schema hash embedded.
inline TrainOutputs run_train(const RunConfig& cfg) {
    const auto dir = pipeline_detail::out_dir(cfg);
    const FeatureSchema schema = pipeline_detail::schema_for(cfg);
    const Dataset data = pipeline_detail::dataset_for(cfg, schema);
    const SplitPlan plan = pipeline_detail::split_for(cfg);
    if (cfg.restarts < 1) throw Error(Errc::config_error, "restarts must be >= 1");

    const Normalizer norm = fit_normalizer(data, plan.train_ids);
    const std::vector<Sample> train_rows = pipeline_detail::to_samples(data, norm, plan.train_ids);
    const std::vector<Sample> val_rows = pipeline_detail::to_samples(data, norm, plan.val_ids);

    MlpConfig mc = cfg.mlp;
    mc.n_inputs = schema.n_features();

    TrainOutputs out;
    double best_val = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < cfg.restarts; ++k) {
        mc.init_seed = derive_seed(cfg.seed, "restart", k);
        TrainResult res = train(mc, train_rows, val_rows);
        const double val_mse = res.trace.epochs.at(res.trace.best_epoch - 1).val_mse;
        if (val_mse < best_val) {
            best_val = val_mse;
            out.best = std::move(res);
            out.best_restart = k;
        }
    }
    out.best_val_mse = best_val;
    out.best.model.normalizer = norm;
    out.best.model.schema_hash = schema.hash();

    out.model_json = (dir / "model.json").string();
    out.trace_csv = (dir / "trace.csv").string();
    jsonio::save_model(out.best.model, out.model_json);

    std::ofstream trace(out.trace_csv, std::ios::binary);
    if (!trace) throw Error(Errc::io_error, "cannot write '" + out.trace_csv + "'");
    csv::write_row(trace, {"epoch", "train_mse", "val_mse"});
    for (std::size_t e = 0; e < out.best.trace.epochs.size(); ++e)
        csv::write_row(trace, {std::to_string(e + 1),
                               pipeline_detail::shortest(out.best.trace.epochs[e].train_mse),
                               pipeline_detail::shortest(out.best.trace.epochs[e].val_mse)});
    if (!trace) throw Error(Errc::io_error, "write failed for '" + out.trace_csv + "'");
    return out;
}

// ------------------------------------------------------------------ eval ---

struct EvalOutputs {
    std::vector<std::pair<std::string, MetricsReport>> sets;  // non-empty sets only
    std::string metrics_json;
    std::string predictions_csv;
};

inline EvalOutputs run_eval(const RunConfig& cfg) {
    const auto dir = pipeline_detail::out_dir(cfg);
    const FeatureSchema schema = pipeline_detail::schema_for(cfg);
    const Dataset data = pipeline_detail::dataset_for(cfg, schema);
    const SplitPlan plan = pipeline_detail::split_for(cfg);
    const MlpModel model = pipeline_detail::model_for(cfg, schema);

    EvalOutputs out;
    out.metrics_json = (dir / "metrics.json").string();
    out.predictions_csv = (dir / "predictions.csv").string();

    std::ofstream pred(out.predictions_csv, std::ios::binary);
    if (!pred) throw Error(Errc::io_error, "cannot write '" + out.predictions_csv + "'");
    csv::write_row(pred, {"set", "city_id", "actual", "predicted", "out_of_range"});

    jsonio::njson sets = jsonio::njson::object();
    const std::pair<const char*, const std::vector<std::string>*> groups[] = {
        {"train", &plan.train_ids},
        {"val", &plan.val_ids},
        {"testA", &plan.testA_ids},
        {"testB", &plan.testB_ids}};
    for (const auto& [name, ids] : groups) {
        if (ids->empty()) continue;
        out.sets.emplace_back(name, evaluate(model, data, *ids));
        sets[name] = jsonio::metrics_body(out.sets.back().second);
        for (const auto& p : predict(model, data, *ids))
            csv::write_row(pred, {name, p.city_id,
                                  pipeline_detail::shortest(data.row(p.city_id).target),
                                  pipeline_detail::shortest(p.y_pred),
                                  p.out_of_range ? "true" : "false"});
    }
    if (!pred) throw Error(Errc::io_error, "write failed for '" + out.predictions_csv + "'");

    jsonio::write_json_file(out.metrics_json, jsonio::njson{{"format", "powercast-eval"},
                                                            {"version", 1},
                                                            {"sets", std::move(sets)}});
    return out;
}

// -------------------------------------------------------------------- pi ---

struct PiOutputs {
    PiReport report;
    std::string pi_json;
};

/// Permutation importance over the full dataset rows (the configurable
/// default). Feature list defaults to the schema's core features.
inline PiOutputs run_pi(const RunConfig& cfg) {
    const auto dir = pipeline_detail::out_dir(cfg);
    const FeatureSchema schema = pipeline_detail::schema_for(cfg);
    const Dataset data = pipeline_detail::dataset_for(cfg, schema);
    const MlpModel model = pipeline_detail::model_for(cfg, schema);

    std::vector<std::string> features = cfg.pi_features;
    if (features.empty()) features = schema.feature_names(FeatureCategory::core);
    if (features.empty()) throw Error(Errc::config_error, "no PI features requested");

    PiOutputs out;
    out.report = pi_report(model, data, data.ids(), features, cfg.pi_reps, cfg.seed, cfg.pi_mode);
    out.pi_json = (dir / "pi.json").string();
    jsonio::save_pi_report(out.report, out.pi_json);
    return out;
}

// ---------------------------------------------------------------- report ---

struct ReportOutputs {
    std::string scatter_svg;
    std::string curve_svg;
};

/// Renders the two study figures: predicted-vs-actual scatter on test B, and
/// the training curve read from the trace CSV sitting next to the model file.
inline ReportOutputs run_report(const RunConfig& cfg) {
    const auto dir = pipeline_detail::out_dir(cfg);
    const FeatureSchema schema = pipeline_detail::schema_for(cfg);
    const Dataset data = pipeline_detail::dataset_for(cfg, schema);
    const SplitPlan plan = pipeline_detail::split_for(cfg);
    const MlpModel model = pipeline_detail::model_for(cfg, schema);

    std::vector<svg::ScatterPoint> points;
    for (const auto& p : predict(model, data, plan.testB_ids))
        points.push_back({data.row(p.city_id).target, p.y_pred, p.out_of_range});
    if (points.empty())
        throw Error(Errc::empty_set, "split plan has no testB rows to plot");

    const std::string unit = schema.target_unit().empty()
                                 ? std::string()
                                 : " (" + schema.target_unit() + ")";
    svg::ScatterOptions sopt;
    sopt.title = "Predicted vs actual, test B";
    sopt.x_label = "actual " + schema.target_name() + unit;
    sopt.y_label = "predicted " + schema.target_name() + unit;
    sopt.timestamp = cfg.timestamp;

    const std::string trace_csv =
        (std::filesystem::path(cfg.model).parent_path() / "trace.csv").string();
    pipeline_detail::require_exists(trace_csv);
    std::ifstream in(trace_csv, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open '" + trace_csv + "'");
    std::vector<double> train_mse, val_mse;
    std::vector<std::string> row;
    std::size_t line_no = 0;
    bool header = true;
    while (csv::read_row(in, row, line_no)) {
        if (header) {
            header = false;
            continue;
        }
        if (row.size() != 3)
            throw Error(Errc::unparseable_cell, trace_csv + ": expected 3 columns");
        train_mse.push_back(pipeline_detail::parse_double(row[1], trace_csv));
        val_mse.push_back(pipeline_detail::parse_double(row[2], trace_csv));
    }
    std::size_t best_epoch = 0;
    for (std::size_t e = 0; e < val_mse.size(); ++e)
        if (best_epoch == 0 || val_mse[e] < val_mse[best_epoch - 1]) best_epoch = e + 1;

    svg::CurveOptions copt;
    copt.title = "Training and validation loss";
    copt.timestamp = cfg.timestamp;

    ReportOutputs out;
    out.scatter_svg = (dir / "scatter_testB.svg").string();
    out.curve_svg = (dir / "training_curve.svg").string();
    svg::save_svg(svg::scatter_svg(points, sopt), out.scatter_svg);
    svg::save_svg(svg::training_curve_svg(train_mse, val_mse, best_epoch, copt), out.curve_svg);
    return out;
}

}  // namespace powercast
