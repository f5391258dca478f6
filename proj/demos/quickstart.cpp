// Generates a synthetic city table, trains the default network on it, and
// prints per-set metrics. Mirrors the CLI flow without touching the
// filesystem.

#include <cstdio>
#include <span>
#include <vector>

#include <powercast/powercast.hpp>

using namespace powercast;

int main() {
    SynthConfig synth = default_synth_config(7);
    synth.n_cities = 200;
    auto [data, truth] = generate(synth);
    std::printf("generated %zu cities x %zu features\n", data.n_rows(),
                data.schema().n_features());

    // every 7th city becomes the manual hold-out set
    std::vector<std::string> holdout;
    const std::vector<std::string> ids = data.ids();
    for (std::size_t i = 0; i < ids.size(); i += 7) holdout.push_back(ids[i]);
    const SplitPlan plan = split(data, holdout, 0.04, 0.04, 7);
    std::printf("split: %zu train, %zu val, %zu testA, %zu testB\n", plan.train_ids.size(),
                plan.val_ids.size(), plan.testA_ids.size(), plan.testB_ids.size());

    const Normalizer norm = fit_normalizer(data, plan.train_ids);
    auto samples = [&](std::span<const std::string> set) {
        std::vector<Sample> rows;
        for (const auto& id : set) {
            const CityRecord& r = data.row(id);
            rows.push_back({norm.normalize_features(r.features), norm.normalize_target(r.target)});
        }
        return rows;
    };

    MlpConfig config;
    config.n_inputs = data.schema().n_features();
    config.init_seed = derive_seed(7, "restart", 0);
    TrainResult result = train(config, samples(plan.train_ids), samples(plan.val_ids));
    result.model.normalizer = norm;
    result.model.schema_hash = data.schema().hash();
    std::printf("trained for %zu epochs (%s), best validation at epoch %zu\n",
                result.trace.epochs.size(),
                std::string(stop_reason_name(result.trace.stop_reason)).c_str(),
                result.trace.best_epoch);

    const std::pair<const char*, const std::vector<std::string>*> sets[] = {
        {"train", &plan.train_ids},
        {"val", &plan.val_ids},
        {"testA", &plan.testA_ids},
        {"testB", &plan.testB_ids}};
    for (const auto& [name, set] : sets) {
        const MetricsReport m = evaluate(result.model, data, *set);
        std::printf("%-6s n=%-4zu R^2=%.4f mae=%.4g rmse=%.4g\n", name, m.n, m.r_squared, m.mae,
                    m.rmse);
    }
    return 0;
}
