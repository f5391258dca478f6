#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "powercast/errors.hpp"
#include "powercast/rng.hpp"

namespace powercast {

enum class FeatureCategory { core, common };

inline std::string_view category_name(FeatureCategory c) {
    return c == FeatureCategory::core ? "core" : "common";
}

inline FeatureCategory category_from_name(std::string_view s) {
    if (s == "core") return FeatureCategory::core;
    if (s == "common") return FeatureCategory::common;
    throw Error(Errc::config_error, "unknown feature category '" + std::string(s) + "'");
}

struct FeatureDescriptor {
    std::string name;
    std::string unit;
    FeatureCategory category = FeatureCategory::common;
};

/// Ordered list of input features plus the target column. Column order is
/// contractual: datasets, normalizers and model weights all index features by
/// their position in the schema.
class FeatureSchema {
public:
    FeatureSchema() = default;

    FeatureSchema(std::vector<FeatureDescriptor> features, std::string target_name,
                  std::string target_unit = "")
        : features_(std::move(features)),
          target_name_(std::move(target_name)),
          target_unit_(std::move(target_unit)) {
        validate();
        for (std::size_t i = 0; i < features_.size(); ++i) index_[features_[i].name] = i;
    }

    const std::vector<FeatureDescriptor>& features() const { return features_; }
    const std::string& target_name() const { return target_name_; }
    const std::string& target_unit() const { return target_unit_; }
    std::size_t n_features() const { return features_.size(); }

    const FeatureDescriptor& feature(std::size_t i) const { return features_.at(i); }

    std::optional<std::size_t> find(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t index_of(std::string_view name) const {
        if (auto i = find(name)) return *i;
        throw Error(Errc::unknown_feature, "feature '" + std::string(name) + "' not in schema");
    }

    std::vector<std::string> feature_names(FeatureCategory category) const {
        std::vector<std::string> out;
        for (const auto& f : features_)
            if (f.category == category) out.push_back(f.name);
        return out;
    }

    std::size_t count(FeatureCategory category) const {
        std::size_t n = 0;
        for (const auto& f : features_)
            if (f.category == category) ++n;
        return n;
    }

    /// Content hash over names, units, categories and the target. Model files
    /// embed it; eval/pi refuse to run a model against a different schema.
    std::uint64_t hash() const {
        std::uint64_t h = detail::fnv1a64("powercast-schema-v1");
        auto mix = [&h](std::string_view s) {
            h = detail::splitmix64(h ^ detail::fnv1a64(s));
        };
        for (const auto& f : features_) {
            mix(f.name);
            mix(f.unit);
            mix(category_name(f.category));
        }
        mix(target_name_);
        mix(target_unit_);
        return h;
    }

private:
    void validate() const {
        if (features_.empty())
            throw Error(Errc::config_error, "schema has no features");
        if (target_name_.empty())
            throw Error(Errc::config_error, "schema target name is empty");
        std::unordered_map<std::string_view, int> seen;
        for (const auto& f : features_) {
            if (f.name.empty())
                throw Error(Errc::config_error, "schema contains an unnamed feature");
            if (++seen[f.name] > 1)
                throw Error(Errc::config_error, "duplicate feature name '" + f.name + "'");
            if (f.name == target_name_)
                throw Error(Errc::config_error,
                            "target name '" + target_name_ + "' collides with a feature");
        }
    }

    std::vector<FeatureDescriptor> features_;
    std::string target_name_;
    std::string target_unit_;
    std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace powercast
