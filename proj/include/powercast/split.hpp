#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "powercast/dataset.hpp"
#include "powercast/errors.hpp"
#include "powercast/rng.hpp"

namespace powercast {

/// Disjoint assignment of every city to train / validation / test A / test B.
/// Test B is always the caller-supplied manual hold-out; the rest is a seeded
/// random draw. Id lists are kept sorted so serialized plans are canonical.
struct SplitPlan {
    std::vector<std::string> train_ids;
    std::vector<std::string> val_ids;
    std::vector<std::string> testA_ids;
    std::vector<std::string> testB_ids;
    std::uint64_t seed = 0;
};

/// Removes the manual test-B hold-out, shuffles the remainder with the seeded
/// generator and cuts it into validation / test A / train. Set sizes are
/// round(n * fraction) for validation and test A; train takes what is left.
inline SplitPlan split(const Dataset& data, std::span<const std::string> testB_ids,
                       double val_fraction, double testA_fraction, std::uint64_t seed) {
    if (!(val_fraction >= 0.0) || !(testA_fraction >= 0.0) ||
        !(val_fraction + testA_fraction < 1.0))
        throw Error(Errc::fraction_out_of_range,
                    "need val_fraction >= 0, testA_fraction >= 0 and their sum < 1");

    std::unordered_set<std::string> holdout;
    for (const auto& id : testB_ids) {
        if (!data.has_id(id)) throw Error(Errc::unknown_id, "testB id '" + id + "' not in dataset");
        holdout.insert(id);
    }

    std::vector<std::string> remaining;
    remaining.reserve(data.n_rows());
    for (const auto& r : data.rows())
        if (!holdout.count(r.city_id)) remaining.push_back(r.city_id);

    Rng rng(seed);
    rng.shuffle(remaining);

    const auto n = static_cast<double>(remaining.size());
    const auto n_val = static_cast<std::size_t>(std::llround(n * val_fraction));
    const auto n_testA = static_cast<std::size_t>(std::llround(n * testA_fraction));

    SplitPlan plan;
    plan.seed = seed;
    plan.val_ids.assign(remaining.begin(), remaining.begin() + n_val);
    plan.testA_ids.assign(remaining.begin() + n_val, remaining.begin() + n_val + n_testA);
    plan.train_ids.assign(remaining.begin() + n_val + n_testA, remaining.end());
    plan.testB_ids.assign(holdout.begin(), holdout.end());

    std::sort(plan.train_ids.begin(), plan.train_ids.end());
    std::sort(plan.val_ids.begin(), plan.val_ids.end());
    std::sort(plan.testA_ids.begin(), plan.testA_ids.end());
    std::sort(plan.testB_ids.begin(), plan.testB_ids.end());
    return plan;
}

}  // namespace powercast
