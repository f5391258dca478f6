#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "powercast/errors.hpp"
#include "powercast/metrics.hpp"
#include "powercast/mlp.hpp"
#include "powercast/normalizer.hpp"
#include "powercast/permimp.hpp"
#include "powercast/schema.hpp"
#include "powercast/split.hpp"
#include "powercast/synthgen.hpp"

namespace powercast::jsonio {

using njson = nlohmann::ordered_json;

inline njson read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open '" + path + "' for reading");
    try {
        return njson::parse(in);
    } catch (const njson::exception& e) {
        throw Error(Errc::io_error, "'" + path + "' is not valid JSON: " + e.what());
    }
}

inline void write_json_file(const std::string& path, const njson& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
    out.flush();
    if (!out) throw Error(Errc::io_error, "failed writing '" + path + "'");
}

namespace detail {

/// Decodes under a guard that rewrites nlohmann's structural exceptions
/// (missing key, wrong type) into io_error with the offending path.
template <typename F>
auto decode(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error&) {
        throw;
    } catch (const njson::exception& e) {
        throw Error(Errc::io_error, "'" + path + "' is malformed: " + e.what());
    }
}

inline void expect_format(const njson& j, std::string_view format, const std::string& path) {
    if (!j.is_object() || j.value("format", "") != format)
        throw Error(Errc::io_error,
                    "'" + path + "' is not a " + std::string(format) + " file");
    if (j.value("version", 0) != 1)
        throw Error(Errc::io_error, "'" + path + "' has an unsupported version");
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline std::uint64_t parse_hex64(const std::string& s, const std::string& path) {
    if (s.empty() || s.size() > 16 ||
        s.find_first_not_of("0123456789abcdef") != std::string::npos)
        throw Error(Errc::io_error, "'" + path + "' has a malformed hash '" + s + "'");
    return std::stoull(s, nullptr, 16);
}

}  // namespace detail

// ---------------------------------------------------------------- schema ---

inline njson schema_to_json(const FeatureSchema& schema) {
    njson features = njson::array();
    for (const auto& f : schema.features())
        features.push_back({{"name", f.name},
                            {"unit", f.unit},
                            {"category", std::string(category_name(f.category))}});
    return njson{{"format", "powercast-schema"},
                 {"version", 1},
                 {"target", {{"name", schema.target_name()}, {"unit", schema.target_unit()}}},
                 {"features", std::move(features)}};
}

inline void save_schema(const FeatureSchema& schema, const std::string& path) {
    write_json_file(path, schema_to_json(schema));
}

inline FeatureSchema load_schema(const std::string& path) {
    const njson j = read_json_file(path);
    return detail::decode(path, [&] {
        detail::expect_format(j, "powercast-schema", path);
        std::vector<FeatureDescriptor> feats;
        for (const auto& f : j.at("features"))
            feats.push_back({f.at("name").get<std::string>(), f.at("unit").get<std::string>(),
                             category_from_name(f.at("category").get<std::string>())});
        return FeatureSchema(std::move(feats), j.at("target").at("name").get<std::string>(),
                             j.at("target").at("unit").get<std::string>());
    });
}

// ----------------------------------------------------------------- model ---

inline void save_model(const MlpModel& m, const std::string& path) {
    njson w1 = njson::array();
    for (std::size_t h = 0; h < m.n_hidden; ++h)
        w1.push_back(njson(std::vector<double>(m.w1.begin() + h * m.n_inputs,
                                               m.w1.begin() + (h + 1) * m.n_inputs)));
    njson ranges = njson::array();
    for (const auto& r : m.normalizer.feature_ranges())
        ranges.push_back({{"min", r.min}, {"max", r.max}});
    const auto& tr = m.normalizer.target_range();
    write_json_file(
        path,
        njson{{"format", "powercast-model"},
              {"version", 1},
              {"n_inputs", m.n_inputs},
              {"n_hidden", m.n_hidden},
              {"hidden_activation", std::string(activation_name(m.hidden_activation))},
              {"schema_hash", detail::hex64(m.schema_hash)},
              {"w1", std::move(w1)},
              {"b1", m.b1},
              {"w2", m.w2},
              {"b2", m.b2},
              {"normalizer",
               {{"features", std::move(ranges)}, {"target", {{"min", tr.min}, {"max", tr.max}}}}}});
}

inline MlpModel load_model(const std::string& path) {
    const njson j = read_json_file(path);
    return detail::decode(path, [&] {
        detail::expect_format(j, "powercast-model", path);
        MlpModel m;
        m.n_inputs = j.at("n_inputs").get<std::size_t>();
        m.n_hidden = j.at("n_hidden").get<std::size_t>();
        m.hidden_activation = activation_from_name(j.at("hidden_activation").get<std::string>());
        m.schema_hash = detail::parse_hex64(j.at("schema_hash").get<std::string>(), path);
        const njson& w1 = j.at("w1");
        if (w1.size() != m.n_hidden)
            throw Error(Errc::io_error, "'" + path + "' w1 row count mismatch");
        m.w1.reserve(m.n_hidden * m.n_inputs);
        for (const auto& row : w1) {
            const auto r = row.get<std::vector<double>>();
            if (r.size() != m.n_inputs)
                throw Error(Errc::io_error, "'" + path + "' w1 column count mismatch");
            m.w1.insert(m.w1.end(), r.begin(), r.end());
        }
        m.b1 = j.at("b1").get<std::vector<double>>();
        m.w2 = j.at("w2").get<std::vector<double>>();
        m.b2 = j.at("b2").get<double>();
        if (m.b1.size() != m.n_hidden || m.w2.size() != m.n_hidden)
            throw Error(Errc::io_error, "'" + path + "' bias/output layer size mismatch");
        const njson& nj = j.at("normalizer");
        std::vector<Normalizer::Range> fr;
        for (const auto& r : nj.at("features"))
            fr.push_back({r.at("min").get<double>(), r.at("max").get<double>()});
        if (fr.size() != m.n_inputs)
            throw Error(Errc::io_error, "'" + path + "' normalizer range count mismatch");
        Normalizer::Range tr{nj.at("target").at("min").get<double>(),
                             nj.at("target").at("max").get<double>()};
        m.normalizer = Normalizer(std::move(fr), tr);
        return m;
    });
}

// ----------------------------------------------------------------- split ---

inline void save_split(const SplitPlan& plan, const std::string& path) {
    write_json_file(path, njson{{"format", "powercast-split"},
                                {"version", 1},
                                {"seed", plan.seed},
                                {"counts",
                                 {{"train", plan.train_ids.size()},
                                  {"val", plan.val_ids.size()},
                                  {"testA", plan.testA_ids.size()},
                                  {"testB", plan.testB_ids.size()}}},
                                {"train", plan.train_ids},
                                {"val", plan.val_ids},
                                {"testA", plan.testA_ids},
                                {"testB", plan.testB_ids}});
}

inline SplitPlan load_split(const std::string& path) {
    const njson j = read_json_file(path);
    return detail::decode(path, [&] {
        detail::expect_format(j, "powercast-split", path);
        SplitPlan plan;
        plan.seed = j.at("seed").get<std::uint64_t>();
        plan.train_ids = j.at("train").get<std::vector<std::string>>();
        plan.val_ids = j.at("val").get<std::vector<std::string>>();
        plan.testA_ids = j.at("testA").get<std::vector<std::string>>();
        plan.testB_ids = j.at("testB").get<std::vector<std::string>>();
        return plan;
    });
}

// --------------------------------------------------------------- metrics ---

inline njson metrics_body(const MetricsReport& r) {
    return njson{{"n", r.n},
                 {"r_squared", r.r_squared},
                 {"pearson_r", r.pearson_r},
                 {"mae", r.mae},
                 {"rmse", r.rmse},
                 {"sse", r.sse},
                 {"ssr", r.ssr},
                 {"sst", r.sst}};
}

inline MetricsReport metrics_from_body(const njson& j) {
    MetricsReport r;
    r.n = j.at("n").get<std::size_t>();
    r.r_squared = j.at("r_squared").get<double>();
    r.pearson_r = j.at("pearson_r").get<double>();
    r.mae = j.at("mae").get<double>();
    r.rmse = j.at("rmse").get<double>();
    r.sse = j.at("sse").get<double>();
    r.ssr = j.at("ssr").get<double>();
    r.sst = j.at("sst").get<double>();
    return r;
}

inline njson metrics_to_json(const MetricsReport& r) {
    njson j{{"format", "powercast-metrics"}, {"version", 1}};
    j.update(metrics_body(r));
    return j;
}

inline void save_metrics(const MetricsReport& r, const std::string& path) {
    write_json_file(path, metrics_to_json(r));
}

inline MetricsReport load_metrics(const std::string& path) {
    const njson j = read_json_file(path);
    return detail::decode(path, [&] {
        detail::expect_format(j, "powercast-metrics", path);
        return metrics_from_body(j);
    });
}

// --------------------------------------------------- permutation report ----

inline void save_pi_report(const PiReport& rep, const std::string& path) {
    njson scores = njson::array();
    for (const auto& s : rep.scores)
        scores.push_back({{"feature", s.feature},
                          {"score", s.score},
                          {"baseline_r_squared", s.baseline_r2},
                          {"permuted_r_squared", s.permuted_r2s}});
    write_json_file(path, njson{{"format", "powercast-pi"},
                                {"version", 1},
                                {"seed", rep.seed},
                                {"repetitions", rep.repetitions},
                                {"mode", std::string(pi_mode_name(rep.mode))},
                                {"baseline_r_squared", rep.baseline_r2},
                                {"ids", rep.ids},
                                {"scores", std::move(scores)}});
}

inline PiReport load_pi_report(const std::string& path) {
    const njson j = read_json_file(path);
    return detail::decode(path, [&] {
        detail::expect_format(j, "powercast-pi", path);
        PiReport rep;
        rep.seed = j.at("seed").get<std::uint64_t>();
        rep.repetitions = j.at("repetitions").get<std::size_t>();
        rep.mode = pi_mode_from_name(j.at("mode").get<std::string>());
        rep.baseline_r2 = j.at("baseline_r_squared").get<double>();
        rep.ids = j.at("ids").get<std::vector<std::string>>();
        for (const auto& s : j.at("scores")) {
            PiScore sc;
            sc.feature = s.at("feature").get<std::string>();
            sc.score = s.at("score").get<double>();
            sc.baseline_r2 = s.at("baseline_r_squared").get<double>();
            sc.permuted_r2s = s.at("permuted_r_squared").get<std::vector<double>>();
            sc.repetitions = sc.permuted_r2s.size();
            rep.scores.push_back(std::move(sc));
        }
        return rep;
    });
}

// ----------------------------------------------------------- ground truth --

inline void save_ground_truth(const GroundTruth& gt, const std::string& path) {
    njson sig = njson::array();
    for (const auto& s : gt.signal_features)
        sig.push_back({{"name", s.name},
                       {"coefficient", s.coefficient},
                       {"transform", std::string(transform_name(s.transform))}});
    write_json_file(path, njson{{"format", "powercast-ground-truth"},
                                {"version", 1},
                                {"seed", gt.seed},
                                {"noise_sigma", gt.noise_sigma},
                                {"signal_features", std::move(sig)}});
}

inline GroundTruth load_ground_truth(const std::string& path) {
    const njson j = read_json_file(path);
    return detail::decode(path, [&] {
        detail::expect_format(j, "powercast-ground-truth", path);
        GroundTruth gt;
        gt.seed = j.at("seed").get<std::uint64_t>();
        gt.noise_sigma = j.at("noise_sigma").get<double>();
        for (const auto& s : j.at("signal_features"))
            gt.signal_features.push_back(
                {s.at("name").get<std::string>(), s.at("coefficient").get<double>(),
                 transform_from_name(s.at("transform").get<std::string>())});
        return gt;
    });
}

}  // namespace powercast::jsonio
