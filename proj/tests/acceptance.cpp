// Release acceptance checks. Each criterion prints one PASS/FAIL line; the
// process exits nonzero if any criterion fails. Criteria 8 and 9 exercise the
// command-line binary, whose path is expected as argv[1].

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "powercast/powercast.hpp"

using namespace powercast;
namespace fs = std::filesystem;

namespace {

// Pinned acceptance tolerances.
constexpr double kGradRelTol = 1e-6;
constexpr double kGradDenomFloor = 1e-3;
constexpr double kGradTimeLimitSec = 10.0;
constexpr double kMetricTol = 1e-12;
constexpr double kTestbR2Threshold = 0.95;  // frozen after the 20-seed calibration sweep
constexpr double kSeedTimeLimitSec = 60.0;
constexpr int kSweepSeeds = 20;
constexpr int kSweepMinPasses = 18;
constexpr std::size_t kPiReps = 10;

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "powercast_acceptance";
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot read '" + path.string() + "'");
    return std::string(std::istreambuf_iterator<char>(in), {});
}

std::vector<Sample> to_samples(const Dataset& data, const Normalizer& norm,
                               std::span<const std::string> ids) {
    std::vector<Sample> out;
    out.reserve(ids.size());
    for (const auto& id : ids) {
        const CityRecord& r = data.row(id);
        out.push_back({norm.normalize_features(r.features), norm.normalize_target(r.target)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// criterion 1: backprop vs central finite differences on an independent
// extended-precision loss
// ---------------------------------------------------------------------------

struct LongModel {
    std::size_t n_inputs, n_hidden;
    Activation act;
    std::vector<long double> w1, b1, w2;
    long double b2;

    explicit LongModel(const MlpModel& m)
        : n_inputs(m.n_inputs),
          n_hidden(m.n_hidden),
          act(m.hidden_activation),
          w1(m.w1.begin(), m.w1.end()),
          b1(m.b1.begin(), m.b1.end()),
          w2(m.w2.begin(), m.w2.end()),
          b2(m.b2) {}

    long double loss(const std::vector<Sample>& batch) const {
        long double sse = 0.0L;
        for (const Sample& s : batch) {
            long double y = b2;
            for (std::size_t j = 0; j < n_hidden; ++j) {
                long double z = b1[j];
                for (std::size_t i = 0; i < n_inputs; ++i) z += w1[j * n_inputs + i] * s.x[i];
                const long double a =
                    act == Activation::tansig ? 2.0L / (1.0L + expl(-2.0L * z)) - 1.0L : z;
                y += w2[j] * a;
            }
            sse += (y - s.y) * (y - s.y);
        }
        return sse / static_cast<long double>(batch.size());
    }
};

bool criterion1(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::size_t params_checked = 0;

    for (int i = 0; i < 100; ++i) {
        MlpModel m;
        m.n_inputs = 1 + static_cast<std::size_t>(i % 7);
        m.n_hidden = i % 2 ? 10 : 1;
        m.hidden_activation = (i / 2) % 2 ? Activation::tansig : Activation::purelin;
        Rng rng(derive_seed(1001, "grad-pair", static_cast<std::uint64_t>(i)));
        m.w1.resize(m.n_hidden * m.n_inputs);
        m.b1.resize(m.n_hidden);
        m.w2.resize(m.n_hidden);
        for (double& w : m.w1) w = rng.uniform(-1.5, 1.5);
        for (double& b : m.b1) b = rng.uniform(-1.5, 1.5);
        for (double& w : m.w2) w = rng.uniform(-1.5, 1.5);
        m.b2 = rng.uniform(-1.5, 1.5);

        std::vector<Sample> batch(1 + static_cast<std::size_t>(i % 5));
        for (Sample& s : batch) {
            s.x.resize(m.n_inputs);
            for (double& v : s.x) v = rng.uniform(-2.0, 2.0);
            s.y = rng.uniform(-2.0, 2.0);
        }

        const MlpGradient g = gradient(m, batch);
        LongModel work(m);
        enum class Param { w1, b1, w2, b2 };
        auto slot = [&](Param p, std::size_t k) -> long double& {
            switch (p) {
                case Param::w1: return work.w1[k];
                case Param::b1: return work.b1[k];
                case Param::w2: return work.w2[k];
                default: return work.b2;
            }
        };
        auto check = [&](double analytic, Param p, std::size_t k) {
            long double& theta = slot(p, k);
            const long double orig = theta;
            const long double h = 1e-6L * (1.0L + fabsl(orig));
            theta = orig + h;
            const long double plus = work.loss(batch);
            theta = orig - h;
            const long double minus = work.loss(batch);
            theta = orig;
            const double fd = static_cast<double>((plus - minus) / (2.0L * h));
            const double denom = std::max({std::abs(analytic), std::abs(fd), kGradDenomFloor});
            worst = std::max(worst, std::abs(analytic - fd) / denom);
            ++params_checked;
        };
        for (std::size_t k = 0; k < m.w1.size(); ++k) check(g.w1[k], Param::w1, k);
        for (std::size_t j = 0; j < m.b1.size(); ++j) check(g.b1[j], Param::b1, j);
        for (std::size_t j = 0; j < m.w2.size(); ++j) check(g.w2[j], Param::w2, j);
        check(g.b2, Param::b2, 0);
    }

    const double elapsed = seconds_since(t0);
    detail = fmt("gradient oracle over 100 model/batch pairs (%zu components), "
                 "worst relative error %.2e, %.2f s",
                 params_checked, worst, elapsed);
    return worst <= kGradRelTol && elapsed < kGradTimeLimitSec;
}

// ---------------------------------------------------------------------------
// criterion 2: metric identities
// ---------------------------------------------------------------------------

bool criterion2(std::string& detail) {
    Rng rng(2002);
    double worst_identity = 0.0;
    bool order_ok = true, bound_ok = true;
    double worst_affine = 0.0;

    for (int it = 0; it < 1000; ++it) {
        const std::size_t n = 2 + rng.uniform_index(63);
        std::vector<double> y(n), p(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = rng.uniform(-50.0, 50.0);
            p[i] = rng.uniform(-50.0, 50.0);
        }
        if (std::fabs(y[0] - y[1]) < 1e-9) y[0] += 1.0;  // keep variance alive

        worst_identity = std::max(worst_identity, std::fabs(r_squared(y, y) - 1.0));
        const double m = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
        const std::vector<double> mean_vec(n, m);
        worst_identity = std::max(worst_identity, std::fabs(r_squared(y, mean_vec)));

        if (rmse(y, p) < mae(y, p)) order_ok = false;

        const double r = pearson_r(y, p);
        if (!(std::fabs(r) <= 1.0)) bound_ok = false;
        std::vector<double> ya(n), pa(n);
        const double a = rng.uniform(0.1, 5.0), b = rng.uniform(-20.0, 20.0);
        const double c = rng.uniform(0.1, 5.0), d = rng.uniform(-20.0, 20.0);
        for (std::size_t i = 0; i < n; ++i) {
            ya[i] = a * y[i] + b;
            pa[i] = c * p[i] + d;
        }
        worst_affine = std::max(worst_affine, std::fabs(pearson_r(ya, pa) - r));
    }

    const std::vector<double> ramp = {1.0, 2.0, 3.0}, anti = {3.0, 2.0, 1.0};
    const bool anti_exact = r_squared(ramp, anti) == -3.0;

    detail = fmt("metric identities: worst identity error %.2e, anti-ramp %s -3 exactly, "
                 "rmse>=mae and |r|<=1 over 1000 vectors %s, worst affine drift %.2e",
                 worst_identity, anti_exact ? "==" : "!=",
                 order_ok && bound_ok ? "hold" : "VIOLATED", worst_affine);
    return worst_identity <= kMetricTol && anti_exact && order_ok && bound_ok &&
           worst_affine <= kMetricTol;
}

// ---------------------------------------------------------------------------
// criterion 3: split fidelity
// ---------------------------------------------------------------------------

bool criterion3(std::string& detail) {
    std::vector<CityRecord> recs;
    for (std::size_t i = 1; i <= 269; ++i) {
        const double v = static_cast<double>(i);
        recs.push_back({testutil::toy_id(i), {v, 2.0 * v}, 3.0 * v});
    }
    const Dataset data(testutil::toy_schema(1, 1), std::move(recs));
    const std::vector<std::string> all_ids = data.ids();

    Rng pick(derive_seed(3003, "holdout", 0));
    std::vector<std::size_t> idx(all_ids.size());
    std::iota(idx.begin(), idx.end(), 0);
    pick.shuffle(idx);
    std::vector<std::string> holdout;
    for (std::size_t i = 0; i < 49; ++i) holdout.push_back(all_ids[idx[i]]);

    const SplitPlan first = split(data, holdout, 0.04, 0.04, 1);
    const bool sizes_ok = first.train_ids.size() == 202 && first.val_ids.size() == 9 &&
                          first.testA_ids.size() == 9 && first.testB_ids.size() == 49;

    bool partition_ok = true, deterministic = true;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const SplitPlan plan = split(data, holdout, 0.04, 0.04, seed);
        const SplitPlan again = split(data, holdout, 0.04, 0.04, seed);
        if (plan.train_ids != again.train_ids || plan.val_ids != again.val_ids ||
            plan.testA_ids != again.testA_ids || plan.testB_ids != again.testB_ids)
            deterministic = false;
        if (plan.train_ids.size() != 202 || plan.val_ids.size() != 9 ||
            plan.testA_ids.size() != 9 || plan.testB_ids.size() != 49)
            partition_ok = false;
        std::vector<std::string> merged;
        for (const auto* set : {&plan.train_ids, &plan.val_ids, &plan.testA_ids, &plan.testB_ids})
            merged.insert(merged.end(), set->begin(), set->end());
        std::sort(merged.begin(), merged.end());
        if (std::adjacent_find(merged.begin(), merged.end()) != merged.end()) partition_ok = false;
        std::vector<std::string> expect = all_ids;
        std::sort(expect.begin(), expect.end());
        if (merged != expect) partition_ok = false;
    }

    detail = fmt("split of 269 rows with a 49-id hold-out -> %zu/%zu/%zu/%zu; partition and "
                 "determinism over 50 seeds %s",
                 first.train_ids.size(), first.val_ids.size(), first.testA_ids.size(),
                 first.testB_ids.size(),
                 partition_ok && deterministic ? "hold" : "VIOLATED");
    return sizes_ok && partition_ok && deterministic;
}

// ---------------------------------------------------------------------------
// criteria 4 and 6: the 20-seed end-to-end sweep
// ---------------------------------------------------------------------------

struct SweepOutcome {
    int r2_passes = 0;
    int pi_passes = 0;
    double min_r2 = 1.0, max_r2 = -1.0;
    double worst_seconds = 0.0;
    std::optional<Dataset> first_data;
    std::optional<MlpModel> first_model;
};

SweepOutcome run_sweep() {
    SweepOutcome out;
    for (std::uint64_t seed = 1; seed <= kSweepSeeds; ++seed) {
        const auto t0 = std::chrono::steady_clock::now();
        const SynthConfig cfg = default_synth_config(seed);
        auto [data, truth] = generate(cfg);

        const std::vector<std::string> all_ids = data.ids();
        std::vector<std::size_t> idx(all_ids.size());
        std::iota(idx.begin(), idx.end(), 0);
        Rng(derive_seed(seed, "testb", 0)).shuffle(idx);
        std::vector<std::string> holdout;
        for (std::size_t i = 0; i < 49; ++i) holdout.push_back(all_ids[idx[i]]);

        const SplitPlan plan = split(data, holdout, 0.04, 0.04, seed);
        const Normalizer norm = fit_normalizer(data, plan.train_ids);
        const std::vector<Sample> train_rows = to_samples(data, norm, plan.train_ids);
        const std::vector<Sample> val_rows = to_samples(data, norm, plan.val_ids);

        MlpConfig mc;
        mc.n_inputs = data.schema().n_features();
        TrainResult best;
        double best_val = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < 3; ++k) {
            mc.init_seed = derive_seed(seed, "restart", k);
            TrainResult res = train(mc, train_rows, val_rows);
            const double val = res.trace.epochs.at(res.trace.best_epoch - 1).val_mse;
            if (val < best_val) {
                best_val = val;
                best = std::move(res);
            }
        }
        best.model.normalizer = norm;
        best.model.schema_hash = data.schema().hash();

        const double r2 = evaluate(best.model, data, plan.testB_ids).r_squared;
        const double elapsed = seconds_since(t0);
        out.min_r2 = std::min(out.min_r2, r2);
        out.max_r2 = std::max(out.max_r2, r2);
        out.worst_seconds = std::max(out.worst_seconds, elapsed);
        if (r2 > kTestbR2Threshold && elapsed < kSeedTimeLimitSec) ++out.r2_passes;

        std::vector<std::string> all_features;
        for (const auto& f : data.schema().features()) all_features.push_back(f.name);
        const PiReport rep =
            pi_report(best.model, data, all_ids, all_features, kPiReps, seed);
        std::set<std::string> signal_names;
        for (const auto& s : truth.signal_features) signal_names.insert(s.name);
        double min_signal = std::numeric_limits<double>::infinity();
        double max_noise = -std::numeric_limits<double>::infinity();
        for (const auto& s : rep.scores) {
            if (signal_names.count(s.feature))
                min_signal = std::min(min_signal, s.score);
            else
                max_noise = std::max(max_noise, s.score);
        }
        if (min_signal > max_noise) ++out.pi_passes;

        if (seed == 1) {
            out.first_data = std::move(data);
            out.first_model = best.model;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// criterion 5: permutation importance null cases
// ---------------------------------------------------------------------------

bool criterion5(std::string& detail) {
    Rng rng(5005);
    std::vector<CityRecord> recs;
    for (std::size_t i = 1; i <= 60; ++i) {
        const double a = rng.uniform(-2.0, 2.0);
        const double b = rng.uniform(-2.0, 2.0);
        recs.push_back({testutil::toy_id(i), {a, b, 4.2}, 2.0 * a - b});
    }
    const Dataset data(testutil::toy_schema(2, 1), std::move(recs));

    MlpModel dead;
    dead.n_inputs = 3;
    dead.n_hidden = 2;
    dead.hidden_activation = Activation::tansig;
    dead.w1 = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0};  // first layer silenced entirely
    dead.b1 = {0.4, -0.3};
    dead.w2 = {0.9, 0.7};
    dead.b2 = 0.2;
    dead.normalizer = fit_normalizer(data, data.ids());
    const double s_dead = pi_score(dead, data, data.ids(), "core_1", kPiReps, 1).score;

    MlpModel live = dead;
    live.w1 = {0.8, -0.5, 0.3, -0.2, 0.6, -0.9};
    const double s_const = pi_score(live, data, data.ids(), "common_1", kPiReps, 1).score;

    detail = fmt("null scores: zeroed first layer S = %g, constant column S = %g "
                 "(both must be exactly zero)",
                 s_dead, s_const);
    return s_dead == 0.0 && s_const == 0.0;
}

// ---------------------------------------------------------------------------
// criterion 7: serialization round-trips
// ---------------------------------------------------------------------------

bool criterion7(const SweepOutcome& sweep, std::string& detail) {
    if (!sweep.first_data || !sweep.first_model) {
        detail = "no trained model available from the sweep";
        return false;
    }
    const Dataset& data = *sweep.first_data;
    const MlpModel& model = *sweep.first_model;
    const fs::path dir = work_dir();

    const std::string model_path = (dir / "roundtrip_model.json").string();
    jsonio::save_model(model, model_path);
    const MlpModel back = jsonio::load_model(model_path);

    Rng rng(7007);
    std::size_t mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> x(model.n_inputs);
        for (double& v : x) v = rng.uniform(-1.2, 1.2);
        if (forward(model, x) != forward(back, x)) ++mismatches;
    }
    const auto pred_a = predict(model, data, data.ids());
    const auto pred_b = predict(back, data, data.ids());
    for (std::size_t i = 0; i < pred_a.size(); ++i)
        if (pred_a[i].y_pred != pred_b[i].y_pred ||
            pred_a[i].out_of_range != pred_b[i].out_of_range)
            ++mismatches;

    const std::string csv_a = (dir / "roundtrip_a.csv").string();
    const std::string csv_b = (dir / "roundtrip_b.csv").string();
    save_csv(data, csv_a);
    const Dataset reloaded = load_csv(csv_a, data.schema());
    bool rows_equal = reloaded.n_rows() == data.n_rows();
    for (std::size_t i = 0; rows_equal && i < data.n_rows(); ++i)
        rows_equal = data.rows()[i].city_id == reloaded.rows()[i].city_id &&
                     data.rows()[i].features == reloaded.rows()[i].features &&
                     data.rows()[i].target == reloaded.rows()[i].target;
    save_csv(reloaded, csv_b);
    const bool bytes_equal = read_file(csv_a) == read_file(csv_b);

    detail = fmt("model save/load: %zu prediction mismatches over 1000 random inputs "
                 "plus %zu dataset rows; CSV round-trip %s",
                 mismatches, data.n_rows(),
                 rows_equal && bytes_equal ? "lossless" : "LOSSY");
    return mismatches == 0 && rows_equal && bytes_equal;
}

// ---------------------------------------------------------------------------
// criteria 8 and 9: CLI determinism and report shape
// ---------------------------------------------------------------------------

struct CliRuns {
    bool commands_ok = false;
    fs::path dir_a, dir_b;
    std::vector<std::string> failed_cmds;
};

int run_cmd(const std::string& cmd) { return std::system((cmd + " >/dev/null 2>&1").c_str()); }

CliRuns run_cli_pipelines(const std::string& cli) {
    CliRuns runs;
    const fs::path base = work_dir() / "cli";
    fs::remove_all(base);
    fs::create_directories(base);
    runs.dir_a = base / "run_a";
    runs.dir_b = base / "run_b";

    const std::string q = "'";
    auto path_of = [&](const fs::path& d, const char* name) { return (d / name).string(); };

    // Hold-out list shared by both runs, derived from the first generation.
    const std::string idfile = (base / "testb.txt").string();

    runs.commands_ok = true;
    for (const fs::path& dir : {runs.dir_a, runs.dir_b}) {
        auto run = [&](const std::string& cmd) {
            if (run_cmd(cmd) != 0) {
                runs.commands_ok = false;
                runs.failed_cmds.push_back(cmd);
            }
        };
        const std::string d = dir.string();
        run(q + cli + q + " gen --out " + q + d + q + " --seed 7");
        if (!runs.commands_ok) return runs;

        if (!fs::exists(idfile)) {
            const Dataset data = load_csv(path_of(dir, "data.csv"), default_schema());
            std::ofstream out(idfile, std::ios::binary);
            const auto ids = data.ids();
            for (std::size_t i = 0; i < ids.size(); i += 6) out << ids[i] << '\n';
        }

        const std::string data_arg = " --data " + q + path_of(dir, "data.csv") + q;
        const std::string split_arg = " --split " + q + path_of(dir, "split.json") + q;
        const std::string model_arg = " --model " + q + path_of(dir, "model.json") + q;
        const std::string out_arg = " --out " + q + d + q;
        run(q + cli + q + " split" + out_arg + data_arg + " --testb-ids " + q + idfile + q +
            " --seed 7");
        run(q + cli + q + " train" + out_arg + data_arg + split_arg + " --seed 7");
        run(q + cli + q + " eval" + out_arg + data_arg + split_arg + model_arg);
        run(q + cli + q + " pi" + out_arg + data_arg + model_arg + " --seed 7 --pi-reps 3");
        run(q + cli + q + " report" + out_arg + data_arg + split_arg + model_arg +
            " --no-timestamp");
        if (!runs.commands_ok) return runs;
    }
    return runs;
}

bool criterion8(const CliRuns& runs, std::string& detail) {
    if (!runs.commands_ok) {
        detail = "CLI pipeline failed: " +
                 (runs.failed_cmds.empty() ? "unknown command" : runs.failed_cmds.front());
        return false;
    }
    std::vector<std::string> diffs;
    for (const char* name :
         {"schema.json", "ground_truth.json", "split.json", "model.json", "metrics.json",
          "pi.json", "data.csv", "trace.csv", "predictions.csv", "scatter_testB.svg",
          "training_curve.svg"}) {
        if (read_file(runs.dir_a / name) != read_file(runs.dir_b / name)) diffs.push_back(name);
    }
    detail = diffs.empty()
                 ? "two CLI pipeline runs with identical seeds are byte-identical "
                   "across all 11 artifacts"
                 : "artifacts differ between identical runs: " + diffs.front();
    return diffs.empty();
}

bool criterion9(const CliRuns& runs, std::string& detail) {
    if (!runs.commands_ok) {
        detail = "CLI pipeline failed; no report output to validate";
        return false;
    }
    const std::string scatter = read_file(runs.dir_a / "scatter_testB.svg");
    const std::string curve = read_file(runs.dir_a / "training_curve.svg");

    std::string why_s, why_c;
    const bool scatter_ok = testutil::xml_well_formed(scatter, &why_s);
    const bool curve_ok = testutil::xml_well_formed(curve, &why_c);

    const SplitPlan plan = jsonio::load_split((runs.dir_a / "split.json").string());
    std::size_t circles = 0;
    for (std::size_t pos = scatter.find("<circle"); pos != std::string::npos;
         pos = scatter.find("<circle", pos + 1))
        ++circles;
    std::size_t polylines = 0;
    for (std::size_t pos = curve.find("<polyline"); pos != std::string::npos;
         pos = curve.find("<polyline", pos + 1))
        ++polylines;

    const bool shape_ok = circles == plan.testB_ids.size() && polylines == 2 &&
                          scatter.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") !=
                              std::string::npos &&
                          curve.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") !=
                              std::string::npos;

    detail = fmt("report SVGs: scatter %s (%zu circles for %zu hold-out rows), curve %s "
                 "(%zu polylines)",
                 scatter_ok ? "well-formed" : ("BROKEN: " + why_s).c_str(), circles,
                 plan.testB_ids.size(), curve_ok ? "well-formed" : ("BROKEN: " + why_c).c_str(),
                 polylines);
    return scatter_ok && curve_ok && shape_ok;
}

template <typename F>
void guarded(int criterion, F&& f) {
    std::string detail;
    bool pass = false;
    try {
        pass = f(detail);
    } catch (const std::exception& e) {
        detail = std::string("unexpected exception: ") + e.what();
        pass = false;
    }
    report(criterion, pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";

    guarded(1, [](std::string& d) { return criterion1(d); });
    guarded(2, [](std::string& d) { return criterion2(d); });
    guarded(3, [](std::string& d) { return criterion3(d); });

    SweepOutcome sweep;
    try {
        sweep = run_sweep();
        report(4, sweep.r2_passes >= kSweepMinPasses,
               fmt("end-to-end convergence: %d/%d seeds with test B R^2 > %.2f "
                   "(range %.4f..%.4f), slowest seed %.1f s",
                   sweep.r2_passes, kSweepSeeds, kTestbR2Threshold, sweep.min_r2, sweep.max_r2,
                   sweep.worst_seconds));
    } catch (const std::exception& e) {
        report(4, false, std::string("sweep failed: ") + e.what());
    }

    guarded(5, [](std::string& d) { return criterion5(d); });

    report(6, sweep.pi_passes >= kSweepMinPasses,
           fmt("signal separation: every signal feature outscored every noise feature in "
               "%d/%d seeds at %zu repetitions",
               sweep.pi_passes, kSweepSeeds, kPiReps));

    guarded(7, [&](std::string& d) { return criterion7(sweep, d); });

    if (cli.empty()) {
        report(8, false, "no CLI binary path given (argv[1])");
        report(9, false, "no CLI binary path given (argv[1])");
    } else {
        CliRuns runs;
        try {
            runs = run_cli_pipelines(cli);
        } catch (const std::exception& e) {
            runs.commands_ok = false;
            runs.failed_cmds = {std::string("exception: ") + e.what()};
        }
        guarded(8, [&](std::string& d) { return criterion8(runs, d); });
        guarded(9, [&](std::string& d) { return criterion9(runs, d); });
    }

    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures ? 1 : 0;
}
