// powercast: city power-consumption study pipeline.
//
// Subcommands compose through files only (gen -> split -> train -> eval ->
// pi -> report). Every flag can also be supplied through a JSON config file;
// flags given on the command line win. Exit codes: 0 success, 1 unexpected
// failure, 2 + error code for domain errors (usage errors keep CLI11's own
// range).

#include <cstdint>
#include <cstdio>
#include <exception>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "powercast/errors.hpp"
#include "powercast/json_io.hpp"
#include "powercast/permimp.hpp"
#include "powercast/pipeline.hpp"

namespace {

using powercast::Errc;
using powercast::Error;
using powercast::jsonio::njson;

int exit_code(Errc c) { return static_cast<int>(c) + 2; }

struct Cli {
    powercast::RunConfig cfg;
    std::string config_path;
    std::string pi_mode{powercast::pi_mode_name(powercast::PiMode::mean_abs_diff)};
    bool no_timestamp = false;
};

// Per-subcommand map from config-file key to the option backing it, so the
// config merge can tell which flags were given explicitly.
using OptMap = std::map<std::string, CLI::Option*>;

OptMap add_options(CLI::App* cmd, Cli& c) {
    OptMap m;
    m["config"] = cmd->add_option("--config", c.config_path,
                                  "JSON config file mirroring the flags; flags override it");
    m["out"] = cmd->add_option("--out", c.cfg.out, "output directory (created if missing)");
    m["schema"] = cmd->add_option("--schema", c.cfg.schema,
                                  "schema JSON (default: bundled city-indicator schema)");
    const std::string name = cmd->get_name();
    if (name != "gen") m["data"] = cmd->add_option("--data", c.cfg.data, "dataset CSV");
    if (name == "eval" || name == "pi" || name == "report")
        m["model"] = cmd->add_option("--model", c.cfg.model, "trained model JSON");
    if (name == "train" || name == "eval" || name == "report")
        m["split"] = cmd->add_option("--split", c.cfg.split, "split plan JSON");
    if (name == "gen" || name == "split" || name == "train" || name == "pi")
        m["seed"] = cmd->add_option("--seed", c.cfg.seed, "master seed");
    if (name == "gen") {
        m["cities"] = cmd->add_option("--cities", c.cfg.n_cities, "number of synthetic cities");
        m["noise"] = cmd->add_option("--noise", c.cfg.noise_sigma,
                                     "target noise level relative to the clean target sd");
    }
    if (name == "split") {
        m["testb-ids"] = cmd->add_option("--testb-ids", c.cfg.testb_ids,
                                         "manual hold-out file, one city_id per line");
        m["val-frac"] = cmd->add_option("--val-frac", c.cfg.val_fraction, "validation fraction");
        m["testa-frac"] =
            cmd->add_option("--testa-frac", c.cfg.testa_fraction, "test-set-A fraction");
    }
    if (name == "train") {
        m["hidden"] = cmd->add_option("--hidden", c.cfg.mlp.n_hidden, "hidden layer width");
        m["lr"] = cmd->add_option("--lr", c.cfg.mlp.learning_rate, "gradient descent step size");
        m["max-epochs"] = cmd->add_option("--max-epochs", c.cfg.mlp.max_epochs, "epoch budget");
        m["patience"] = cmd->add_option("--patience", c.cfg.mlp.patience,
                                        "epochs without validation improvement before stopping");
        m["restarts"] = cmd->add_option("--restarts", c.cfg.restarts,
                                        "independent inits; best validation wins");
    }
    if (name == "pi") {
        m["pi-reps"] =
            cmd->add_option("--pi-reps", c.cfg.pi_reps, "permutation repetitions per feature");
        m["pi-features"] = cmd->add_option("--pi-features", c.cfg.pi_features,
                                           "features to score, comma-separated (default: the "
                                           "schema's core features)")
                               ->delimiter(',');
        m["pi-mode"] = cmd->add_option("--pi-mode", c.pi_mode,
                                       "scoring mode: mean_abs_diff or signed_drop");
    }
    if (name == "report")
        m["no-timestamp"] = cmd->add_flag("--no-timestamp", c.no_timestamp,
                                          "omit the generated-at timestamp from SVG output");
    return m;
}

// Applies config-file values for every key the command line left untouched.
// Keys for other subcommands are accepted too, so one file can drive the
// whole pipeline.
void apply_config(const std::string& path, const OptMap& given, Cli& c) {
    const njson j = powercast::jsonio::read_json_file(path);
    if (!j.is_object())
        throw Error(Errc::config_error, "config file '" + path + "' must hold a JSON object");
    static const std::set<std::string> known = {
        "data",   "schema",    "model",      "out",      "split",    "testb-ids",   "seed",
        "cities", "noise",     "val-frac",   "testa-frac", "hidden", "lr",          "max-epochs",
        "patience", "restarts", "pi-reps",   "pi-features", "pi-mode", "no-timestamp"};
    for (const auto& item : j.items())
        if (!known.count(item.key()))
            throw Error(Errc::config_error,
                        "config file '" + path + "': unknown key '" + item.key() + "'");

    auto overridden = [&given](const char* key) {
        auto it = given.find(key);
        return it != given.end() && it->second->count() > 0;
    };
    try {
        auto load = [&](const char* key, auto& dst) {
            if (j.contains(key) && !overridden(key))
                dst = j.at(key).get<std::decay_t<decltype(dst)>>();
        };
        load("data", c.cfg.data);
        load("schema", c.cfg.schema);
        load("model", c.cfg.model);
        load("out", c.cfg.out);
        load("split", c.cfg.split);
        load("testb-ids", c.cfg.testb_ids);
        load("seed", c.cfg.seed);
        load("cities", c.cfg.n_cities);
        load("noise", c.cfg.noise_sigma);
        load("val-frac", c.cfg.val_fraction);
        load("testa-frac", c.cfg.testa_fraction);
        load("hidden", c.cfg.mlp.n_hidden);
        load("lr", c.cfg.mlp.learning_rate);
        load("max-epochs", c.cfg.mlp.max_epochs);
        load("patience", c.cfg.mlp.patience);
        load("restarts", c.cfg.restarts);
        load("pi-reps", c.cfg.pi_reps);
        load("pi-mode", c.pi_mode);
        load("no-timestamp", c.no_timestamp);
        if (j.contains("pi-features") && !overridden("pi-features")) {
            const njson& v = j.at("pi-features");
            if (v.is_string()) {
                c.cfg.pi_features.clear();
                std::string s = v.get<std::string>();
                std::size_t pos = 0;
                while (pos <= s.size()) {
                    std::size_t comma = s.find(',', pos);
                    if (comma == std::string::npos) comma = s.size();
                    if (comma > pos) c.cfg.pi_features.push_back(s.substr(pos, comma - pos));
                    pos = comma + 1;
                }
            } else {
                c.cfg.pi_features = v.get<std::vector<std::string>>();
            }
        }
    } catch (const njson::exception& e) {
        throw Error(Errc::config_error, "config file '" + path + "': " + e.what());
    }
}

void print_metrics_table(const std::vector<std::pair<std::string, powercast::MetricsReport>>& sets) {
    std::printf("%-8s %6s %14s %14s %14s %14s\n", "set", "n", "r_squared", "pearson_r", "mae",
                "rmse");
    for (const auto& [name, m] : sets)
        std::printf("%-8s %6zu %14.6g %14.6g %14.6g %14.6g\n", name.c_str(), m.n, m.r_squared,
                    m.pearson_r, m.mae, m.rmse);
}

int dispatch(const std::string& name, Cli& c) {
    using namespace powercast;
    c.cfg.pi_mode = pi_mode_from_name(c.pi_mode);
    c.cfg.timestamp = !c.no_timestamp;
    if (name == "gen") {
        const GenOutputs out = run_gen(c.cfg);
        std::printf("wrote %s (%zu rows)\n", out.data_csv.c_str(), out.n_rows);
        std::printf("wrote %s\n", out.schema_json.c_str());
        std::printf("wrote %s\n", out.ground_truth_json.c_str());
    } else if (name == "split") {
        const SplitOutputs out = run_split(c.cfg);
        std::printf("train %zu  val %zu  testA %zu  testB %zu\n", out.plan.train_ids.size(),
                    out.plan.val_ids.size(), out.plan.testA_ids.size(), out.plan.testB_ids.size());
        std::printf("wrote %s\n", out.split_json.c_str());
    } else if (name == "train") {
        const TrainOutputs out = run_train(c.cfg);
        std::printf("best restart %zu: validation mse %.8g at epoch %zu (%s after %zu epochs)\n",
                    out.best_restart, out.best_val_mse, out.best.trace.best_epoch,
                    stop_reason_name(out.best.trace.stop_reason).data(),
                    out.best.trace.epochs.size());
        std::printf("wrote %s\n", out.model_json.c_str());
        std::printf("wrote %s\n", out.trace_csv.c_str());
    } else if (name == "eval") {
        const EvalOutputs out = run_eval(c.cfg);
        print_metrics_table(out.sets);
        std::printf("wrote %s\n", out.metrics_json.c_str());
        std::printf("wrote %s\n", out.predictions_csv.c_str());
    } else if (name == "pi") {
        const PiOutputs out = run_pi(c.cfg);
        std::fputs(pi_table(out.report).c_str(), stdout);
        std::printf("wrote %s\n", out.pi_json.c_str());
    } else if (name == "report") {
        const ReportOutputs out = run_report(c.cfg);
        std::printf("wrote %s\n", out.scatter_svg.c_str());
        std::printf("wrote %s\n", out.curve_svg.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"powercast: train and analyze a city power-consumption predictor"};
    app.require_subcommand(1);
    Cli c;
    std::map<std::string, OptMap> opts;
    opts["gen"] = add_options(app.add_subcommand("gen", "generate a synthetic city dataset"), c);
    opts["split"] =
        add_options(app.add_subcommand("split", "partition a dataset into train/val/testA/testB"), c);
    opts["train"] = add_options(app.add_subcommand("train", "fit the predictor"), c);
    opts["eval"] = add_options(app.add_subcommand("eval", "score a model on every split set"), c);
    opts["pi"] = add_options(app.add_subcommand("pi", "rank features by permutation importance"), c);
    opts["report"] = add_options(app.add_subcommand("report", "render scatter and training-curve "
                                                              "figures"),
                                 c);
    CLI11_PARSE(app, argc, argv);
    const std::string name = app.get_subcommands().front()->get_name();
    try {
        if (!c.config_path.empty()) apply_config(c.config_path, opts.at(name), c);
        return dispatch(name, c);
    } catch (const Error& e) {
        const njson err{{"error", powercast::errc_name(e.code())},
                        {"message", e.what()},
                        {"exit_code", exit_code(e.code())}};
        std::fprintf(stderr, "%s\n", err.dump().c_str());
        return exit_code(e.code());
    } catch (const std::exception& e) {
        const njson err{{"error", "internal"}, {"message", e.what()}, {"exit_code", 1}};
        std::fprintf(stderr, "%s\n", err.dump().c_str());
        return 1;
    }
}
