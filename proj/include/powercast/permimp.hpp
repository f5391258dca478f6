#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "powercast/dataset.hpp"
#include "powercast/errors.hpp"
#include "powercast/metrics.hpp"
#include "powercast/rng.hpp"

namespace powercast {

/// How a permutation run is collapsed into one score.
///  - mean_abs_diff (default): mean |R0^2 - Rl^2| over the repetitions.
///  - signed_drop: R0^2 - mean(Rl^2), the generic "how much the score drops"
///    form. Negative values mean the shuffled column scored better.
enum class PiMode { mean_abs_diff, signed_drop };

inline std::string_view pi_mode_name(PiMode m) {
    return m == PiMode::mean_abs_diff ? "mean_abs_diff" : "signed_drop";
}

inline PiMode pi_mode_from_name(std::string_view s) {
    if (s == "mean_abs_diff") return PiMode::mean_abs_diff;
    if (s == "signed_drop") return PiMode::signed_drop;
    throw Error(Errc::config_error, "unknown PI mode '" + std::string(s) + "'");
}

struct PiScore {
    std::string feature;
    double score = 0.0;
    std::size_t repetitions = 0;
    double baseline_r2 = 0.0;
    std::vector<double> permuted_r2s;
};

struct PiReport {
    std::vector<PiScore> scores;  // descending by score
    std::uint64_t seed = 0;
    std::size_t repetitions = 0;
    PiMode mode = PiMode::mean_abs_diff;
    double baseline_r2 = 0.0;
    std::vector<std::string> ids;  // evaluation rows
};

/// Copy of the dataset in which exactly one feature column is a seeded
/// uniform-random permutation of the original values.
inline Dataset permute_column(const Dataset& data, const std::string& feature,
                              std::uint64_t seed) {
    const std::size_t col = data.schema().index_of(feature);
    std::vector<double> values;
    values.reserve(data.n_rows());
    for (const auto& r : data.rows()) values.push_back(r.features[col]);
    Rng rng(seed);
    rng.shuffle(values);
    return data.with_column(col, values);
}

/// Scores one feature: baseline R^2 on the untainted rows, then `repetitions`
/// tainted datasets with per-repetition derived seeds.
inline PiScore pi_score(const MlpModel& model, const Dataset& data,
                        std::span<const std::string> ids, const std::string& feature,
                        std::size_t repetitions, std::uint64_t seed,
                        PiMode mode = PiMode::mean_abs_diff) {
    if (repetitions < 1) throw Error(Errc::config_error, "PI repetitions must be >= 1");
    data.schema().index_of(feature);  // unknown_feature before any work

    PiScore out;
    out.feature = feature;
    out.repetitions = repetitions;
    out.baseline_r2 = evaluate(model, data, ids).r_squared;
    out.permuted_r2s.reserve(repetitions);

    double acc = 0.0;
    for (std::size_t l = 1; l <= repetitions; ++l) {
        const std::uint64_t rep_seed = derive_seed(seed, feature, l);
        const Dataset tainted = permute_column(data, feature, rep_seed);
        const double r2 = evaluate(model, tainted, ids).r_squared;
        out.permuted_r2s.push_back(r2);
        acc += mode == PiMode::mean_abs_diff ? std::fabs(out.baseline_r2 - r2)
                                             : out.baseline_r2 - r2;
    }
    out.score = acc / static_cast<double>(repetitions);
    return out;
}

/// One pi_score per feature, sorted descending. Per-feature seeds are derived
/// from (seed, feature), so the report does not depend on feature order.
inline PiReport pi_report(const MlpModel& model, const Dataset& data,
                          std::span<const std::string> ids,
                          std::span<const std::string> features, std::size_t repetitions,
                          std::uint64_t seed, PiMode mode = PiMode::mean_abs_diff) {
    if (features.empty()) throw Error(Errc::empty_set, "no features requested");
    PiReport rep;
    rep.seed = seed;
    rep.repetitions = repetitions;
    rep.mode = mode;
    rep.ids.assign(ids.begin(), ids.end());
    for (const auto& f : features)
        rep.scores.push_back(pi_score(model, data, ids, f, repetitions, seed, mode));
    rep.baseline_r2 = rep.scores.front().baseline_r2;
    std::stable_sort(rep.scores.begin(), rep.scores.end(), [](const PiScore& a, const PiScore& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.feature < b.feature;
    });
    return rep;
}

/// Two-column text table, "Data name / PI Score" layout.
inline std::string pi_table(const PiReport& rep) {
    std::size_t width = std::string_view("Data name").size();
    for (const auto& s : rep.scores) width = std::max(width, s.feature.size());
    std::string out = "Data name";
    out.append(width - out.size() + 2, ' ');
    out += "PI Score\n";
    char buf[32];
    for (const auto& s : rep.scores) {
        out += s.feature;
        out.append(width - s.feature.size() + 2, ' ');
        std::snprintf(buf, sizeof buf, "%.4f", s.score);
        out += buf;
        out += '\n';
    }
    return out;
}

}  // namespace powercast
