#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "powercast/dataset.hpp"
#include "powercast/errors.hpp"

namespace powercast {

/// Per-column affine map to [-1, +1], fitted on training rows only. Columns
/// with max == min are flagged constant and map to 0. The map extrapolates
/// outside the fitted range; in_range() lets callers flag that.
class Normalizer {
public:
    struct Range {
        double min = 0.0;
        double max = 0.0;
        bool constant() const { return max == min; }
    };

    Normalizer() = default;

    Normalizer(std::vector<Range> feature_ranges, Range target_range)
        : feature_ranges_(std::move(feature_ranges)), target_range_(target_range) {}

    static Normalizer fit(const Dataset& data, std::span<const std::string> ids) {
        if (ids.empty()) throw Error(Errc::empty_set, "fit_normalizer: no training ids");
        const std::size_t nf = data.schema().n_features();
        std::vector<Range> fr(nf);
        Range tr;
        bool first = true;
        for (const auto& id : ids) {
            const CityRecord& r = data.row(id);  // throws unknown_id
            if (first) {
                for (std::size_t c = 0; c < nf; ++c) fr[c] = {r.features[c], r.features[c]};
                tr = {r.target, r.target};
                first = false;
                continue;
            }
            for (std::size_t c = 0; c < nf; ++c) {
                fr[c].min = std::min(fr[c].min, r.features[c]);
                fr[c].max = std::max(fr[c].max, r.features[c]);
            }
            tr.min = std::min(tr.min, r.target);
            tr.max = std::max(tr.max, r.target);
        }
        return Normalizer(std::move(fr), tr);
    }

    std::size_t n_features() const { return feature_ranges_.size(); }
    const std::vector<Range>& feature_ranges() const { return feature_ranges_; }
    const Range& target_range() const { return target_range_; }

    double normalize_feature(std::size_t col, double v) const {
        return scale(feature_ranges_.at(col), v);
    }

    double denormalize_feature(std::size_t col, double z) const {
        return unscale(feature_ranges_.at(col), z);
    }

    std::vector<double> normalize_features(std::span<const double> x) const {
        if (x.size() != feature_ranges_.size())
            throw Error(Errc::dimension_mismatch,
                        "normalize: vector length " + std::to_string(x.size()) + " vs fitted " +
                            std::to_string(feature_ranges_.size()));
        std::vector<double> out(x.size());
        for (std::size_t c = 0; c < x.size(); ++c) out[c] = scale(feature_ranges_[c], x[c]);
        return out;
    }

    double normalize_target(double y) const { return scale(target_range_, y); }
    double denormalize_target(double z) const { return unscale(target_range_, z); }

    /// True when every feature lies within the fitted training range.
    bool in_range(std::span<const double> x) const {
        for (std::size_t c = 0; c < x.size() && c < feature_ranges_.size(); ++c) {
            const Range& r = feature_ranges_[c];
            if (x[c] < r.min || x[c] > r.max) return false;
        }
        return true;
    }

private:
    static double scale(const Range& r, double v) {
        if (r.constant()) return 0.0;
        return -1.0 + 2.0 * (v - r.min) / (r.max - r.min);
    }

    static double unscale(const Range& r, double z) {
        if (r.constant()) return r.min;
        return r.min + (z + 1.0) * 0.5 * (r.max - r.min);
    }

    std::vector<Range> feature_ranges_;
    Range target_range_;
};

inline Normalizer fit_normalizer(const Dataset& data, std::span<const std::string> ids) {
    return Normalizer::fit(data, ids);
}

}  // namespace powercast
