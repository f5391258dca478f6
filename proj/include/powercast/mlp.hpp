#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "powercast/errors.hpp"
#include "powercast/normalizer.hpp"
#include "powercast/rng.hpp"

namespace powercast {

enum class Activation { tansig, purelin };

inline std::string_view activation_name(Activation a) {
    return a == Activation::tansig ? "tansig" : "purelin";
}

inline Activation activation_from_name(std::string_view s) {
    if (s == "tansig") return Activation::tansig;
    if (s == "purelin") return Activation::purelin;
    throw Error(Errc::config_error, "unknown activation '" + std::string(s) + "'");
}

/// Symmetric sigmoid 2/(1+e^(-2x)) - 1, evaluated as (1-u)/(1+u) with
/// u = e^(-2|x|) so it saturates instead of overflowing. Output stays
/// strictly inside (-1, 1) for every finite input, and odd symmetry is exact.
inline double tansig(double x) {
    const double u = std::exp(-2.0 * std::fabs(x));
    double r = (1.0 - u) / (1.0 + u);
    if (r >= 1.0) r = std::nextafter(1.0, 0.0);
    return x < 0.0 ? -r : r;
}

/// Linear transfer function.
inline double purelin(double x) { return x; }

inline double activate(Activation a, double x) {
    return a == Activation::tansig ? tansig(x) : x;
}

/// Activation derivative expressed through the activation output.
inline double activate_derivative(Activation a, double output) {
    return a == Activation::tansig ? 1.0 - output * output : 1.0;
}

struct MlpConfig {
    std::size_t n_inputs = 85;
    std::size_t n_hidden = 10;
    Activation hidden_activation = Activation::tansig;
    double learning_rate = 0.01;
    std::size_t max_epochs = 1000;
    std::size_t patience = 6;
    std::uint64_t init_seed = 0;

    void validate() const {
        if (n_inputs == 0 || n_hidden == 0)
            throw Error(Errc::config_error, "n_inputs and n_hidden must be positive");
        if (!(learning_rate > 0.0)) throw Error(Errc::config_error, "learning_rate must be > 0");
        if (max_epochs < 1) throw Error(Errc::config_error, "max_epochs must be >= 1");
        if (patience < 1) throw Error(Errc::config_error, "patience must be >= 1");
    }
};

/// One hidden layer of n_hidden units feeding a single linear output.
/// w1 is row-major n_hidden x n_inputs; w2 has one weight per hidden unit.
/// The embedded normalizer maps physical units to the network's input space;
/// it is empty on freshly trained weights until the pipeline binds one.
struct MlpModel {
    std::size_t n_inputs = 0;
    std::size_t n_hidden = 0;
    Activation hidden_activation = Activation::tansig;
    std::vector<double> w1;
    std::vector<double> b1;
    std::vector<double> w2;
    double b2 = 0.0;
    Normalizer normalizer;
    std::uint64_t schema_hash = 0;
};

struct MlpGradient {
    std::vector<double> w1;
    std::vector<double> b1;
    std::vector<double> w2;
    double b2 = 0.0;
};

/// A training/validation row in normalized space.
struct Sample {
    std::vector<double> x;
    double y = 0.0;
};

namespace detail {

inline void check_input_dim(const MlpModel& m, std::size_t got) {
    if (got != m.n_inputs)
        throw Error(Errc::dimension_mismatch,
                    "input length " + std::to_string(got) + ", network expects " +
                        std::to_string(m.n_inputs));
}

inline double forward_hidden(const MlpModel& m, std::span<const double> x,
                             std::vector<double>& hidden) {
    hidden.resize(m.n_hidden);
    for (std::size_t j = 0; j < m.n_hidden; ++j) {
        double z = m.b1[j];
        const double* wrow = m.w1.data() + j * m.n_inputs;
        for (std::size_t i = 0; i < m.n_inputs; ++i) z += wrow[i] * x[i];
        hidden[j] = activate(m.hidden_activation, z);
    }
    double y = m.b2;
    for (std::size_t j = 0; j < m.n_hidden; ++j) y += m.w2[j] * hidden[j];
    return y;
}

/// Accumulates the full-batch MSE gradient into `g` (which must be zeroed and
/// sized) and returns the batch MSE. Single code path shared by gradient()
/// and the training loop.
inline double accumulate_gradient(const MlpModel& m, std::span<const Sample> batch,
                                  MlpGradient& g, std::vector<double>& hidden) {
    const double inv_n = 1.0 / static_cast<double>(batch.size());
    double sse = 0.0;
    for (const Sample& s : batch) {
        check_input_dim(m, s.x.size());
        const double pred = forward_hidden(m, s.x, hidden);
        const double err = pred - s.y;
        sse += err * err;
        const double dpred = 2.0 * err * inv_n;  // d(MSE)/d(pred)
        g.b2 += dpred;
        for (std::size_t j = 0; j < m.n_hidden; ++j) {
            const double h = hidden[j];
            g.w2[j] += dpred * h;
            const double dz = dpred * m.w2[j] * activate_derivative(m.hidden_activation, h);
            g.b1[j] += dz;
            double* grow = g.w1.data() + j * m.n_inputs;
            const double* xs = s.x.data();
            for (std::size_t i = 0; i < m.n_inputs; ++i) grow[i] += dz * xs[i];
        }
    }
    return sse * inv_n;
}

}  // namespace detail

/// Output of the network for one normalized input vector.
inline double forward(const MlpModel& m, std::span<const double> x) {
    detail::check_input_dim(m, x.size());
    std::vector<double> hidden;
    return detail::forward_hidden(m, x, hidden);
}

/// Mean squared error of the network over normalized rows.
inline double mean_squared_error(const MlpModel& m, std::span<const Sample> rows) {
    if (rows.empty()) throw Error(Errc::empty_set, "mse over empty row set");
    std::vector<double> hidden;
    double sse = 0.0;
    for (const Sample& s : rows) {
        detail::check_input_dim(m, s.x.size());
        const double e = detail::forward_hidden(m, s.x, hidden) - s.y;
        sse += e * e;
    }
    return sse / static_cast<double>(rows.size());
}

/// d(MSE)/d(theta) over the batch, by backpropagation.
inline MlpGradient gradient(const MlpModel& m, std::span<const Sample> batch) {
    if (batch.empty()) throw Error(Errc::empty_batch, "gradient of empty batch");
    MlpGradient g;
    g.w1.assign(m.w1.size(), 0.0);
    g.b1.assign(m.b1.size(), 0.0);
    g.w2.assign(m.w2.size(), 0.0);
    g.b2 = 0.0;
    std::vector<double> hidden;
    detail::accumulate_gradient(m, batch, g, hidden);
    return g;
}

enum class StopReason { max_epochs, early_stop };

inline std::string_view stop_reason_name(StopReason r) {
    return r == StopReason::max_epochs ? "max_epochs" : "early_stop";
}

struct EpochStat {
    double train_mse = 0.0;
    double val_mse = 0.0;
};

/// Per-epoch loss record. best_epoch is 1-based and marks the epoch whose
/// weights the returned model carries.
struct TrainingTrace {
    std::vector<EpochStat> epochs;
    std::size_t best_epoch = 0;
    StopReason stop_reason = StopReason::max_epochs;
};

struct TrainResult {
    MlpModel model;
    TrainingTrace trace;
};

/// Seeded weight initialization. The hidden layer draws from
/// [-1/sqrt(fan_in), +1/sqrt(fan_in)], which keeps initial tansig
/// pre-activations out of saturation; the linear output layer draws from the
/// wider Glorot-uniform range, which speeds up hidden-layer learning under
/// plain gradient descent (the hidden weights' effective step size scales
/// with the magnitude of the output weights).
inline MlpModel init_model(const MlpConfig& config) {
    config.validate();
    MlpModel m;
    m.n_inputs = config.n_inputs;
    m.n_hidden = config.n_hidden;
    m.hidden_activation = config.hidden_activation;
    Rng rng(config.init_seed);
    const double a1 = 1.0 / std::sqrt(static_cast<double>(config.n_inputs));
    const double a2 = std::sqrt(6.0 / static_cast<double>(config.n_hidden + 1));
    m.w1.resize(config.n_hidden * config.n_inputs);
    m.b1.resize(config.n_hidden);
    m.w2.resize(config.n_hidden);
    for (double& w : m.w1) w = rng.uniform(-a1, a1);
    for (double& b : m.b1) b = rng.uniform(-a1, a1);
    for (double& w : m.w2) w = rng.uniform(-a2, a2);
    m.b2 = rng.uniform(-a2, a2);
    return m;
}

/// Full-batch gradient descent from the given starting weights. Stops at
/// max_epochs or after `patience` consecutive epochs without a new validation
/// minimum; the returned model carries the weights of the best epoch.
inline TrainResult train_from(MlpModel model, const MlpConfig& config,
                              std::span<const Sample> train_rows,
                              std::span<const Sample> val_rows) {
    config.validate();
    if (train_rows.empty()) throw Error(Errc::empty_set, "training set is empty");
    if (val_rows.empty()) throw Error(Errc::empty_set, "validation set is empty");

    TrainResult out;
    TrainingTrace& trace = out.trace;
    trace.stop_reason = StopReason::max_epochs;

    MlpGradient g;
    g.w1.resize(model.w1.size());
    g.b1.resize(model.b1.size());
    g.w2.resize(model.w2.size());
    std::vector<double> hidden;

    MlpModel best = model;
    double best_val = std::numeric_limits<double>::infinity();
    std::size_t epochs_since_best = 0;
    const double lr = config.learning_rate;

    for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
        std::fill(g.w1.begin(), g.w1.end(), 0.0);
        std::fill(g.b1.begin(), g.b1.end(), 0.0);
        std::fill(g.w2.begin(), g.w2.end(), 0.0);
        g.b2 = 0.0;
        const double train_mse = detail::accumulate_gradient(model, train_rows, g, hidden);

        for (std::size_t k = 0; k < model.w1.size(); ++k) model.w1[k] -= lr * g.w1[k];
        for (std::size_t j = 0; j < model.n_hidden; ++j) {
            model.b1[j] -= lr * g.b1[j];
            model.w2[j] -= lr * g.w2[j];
        }
        model.b2 -= lr * g.b2;

        const double val_mse = mean_squared_error(model, val_rows);
        if (!std::isfinite(train_mse) || !std::isfinite(val_mse))
            throw Error(Errc::divergence_detected,
                        "non-finite loss at epoch " + std::to_string(epoch) +
                            " (train_mse=" + std::to_string(train_mse) +
                            ", val_mse=" + std::to_string(val_mse) +
                            "); reduce the learning rate");
        trace.epochs.push_back({train_mse, val_mse});

        if (val_mse < best_val) {
            best_val = val_mse;
            best = model;
            trace.best_epoch = epoch;
            epochs_since_best = 0;
        } else if (++epochs_since_best >= config.patience) {
            trace.stop_reason = StopReason::early_stop;
            break;
        }
    }

    out.model = std::move(best);
    return out;
}

/// Seeded initialization plus train_from. Deterministic in (config, data).
inline TrainResult train(const MlpConfig& config, std::span<const Sample> train_rows,
                         std::span<const Sample> val_rows) {
    return train_from(init_model(config), config, train_rows, val_rows);
}

struct Prediction {
    std::string city_id;
    double y_pred = 0.0;       // physical units
    bool out_of_range = false;  // some feature fell outside the fitted range
};

/// Runs the model on the named rows: normalize features, forward pass,
/// denormalize the output back to physical units.
inline std::vector<Prediction> predict(const MlpModel& m, const Dataset& data,
                                       std::span<const std::string> ids) {
    if (m.normalizer.n_features() != m.n_inputs)
        throw Error(Errc::dimension_mismatch,
                    "model has no normalizer fitted for " + std::to_string(m.n_inputs) +
                        " inputs");
    std::vector<Prediction> out;
    out.reserve(ids.size());
    std::vector<double> hidden;
    for (const auto& id : ids) {
        const CityRecord& row = data.row(id);
        const std::vector<double> xn = m.normalizer.normalize_features(row.features);
        const double z = detail::forward_hidden(m, xn, hidden);
        out.push_back({id, m.normalizer.denormalize_target(z), !m.normalizer.in_range(row.features)});
    }
    return out;
}

}  // namespace powercast
