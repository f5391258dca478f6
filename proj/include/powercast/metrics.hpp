#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "powercast/errors.hpp"
#include "powercast/mlp.hpp"

namespace powercast {

namespace detail {

inline void check_same_length(std::span<const double> a, std::span<const double> b,
                              std::size_t min_len) {
    if (a.size() != b.size())
        throw Error(Errc::length_mismatch, std::to_string(a.size()) + " vs " +
                                               std::to_string(b.size()) + " values");
    if (a.size() < min_len)
        throw Error(Errc::length_mismatch,
                    "need at least " + std::to_string(min_len) + " values");
}

inline double mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace detail

/// Coefficient of determination, 1 - SSE/SST. 1 means every prediction equals
/// the truth, 0 matches the mean predictor, negative is worse than the mean.
inline double r_squared(std::span<const double> y_true, std::span<const double> y_pred) {
    detail::check_same_length(y_true, y_pred, 2);
    const double ybar = detail::mean(y_true);
    double sse = 0.0, sst = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const double e = y_true[i] - y_pred[i];
        const double d = y_true[i] - ybar;
        sse += e * e;
        sst += d * d;
    }
    if (sst == 0.0) throw Error(Errc::zero_variance, "constant y_true, R^2 undefined");
    return 1.0 - sse / sst;
}

/// Correlation coefficient Cov(a,b)/sqrt(Var[a] Var[b]), population
/// convention. Clamped to [-1, 1] against rounding.
inline double pearson_r(std::span<const double> a, std::span<const double> b) {
    detail::check_same_length(a, b, 2);
    const double ma = detail::mean(a);
    const double mb = detail::mean(b);
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if (va == 0.0 || vb == 0.0)
        throw Error(Errc::zero_variance, "correlation undefined for a constant vector");
    return std::clamp(cov / std::sqrt(va * vb), -1.0, 1.0);
}

inline double mae(std::span<const double> y_true, std::span<const double> y_pred) {
    detail::check_same_length(y_true, y_pred, 1);
    double s = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i) s += std::fabs(y_true[i] - y_pred[i]);
    return s / static_cast<double>(y_true.size());
}

inline double rmse(std::span<const double> y_true, std::span<const double> y_pred) {
    detail::check_same_length(y_true, y_pred, 1);
    double s = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const double e = y_true[i] - y_pred[i];
        s += e * e;
    }
    return std::sqrt(s / static_cast<double>(y_true.size()));
}

/// All evaluation statistics for one prediction run, in physical units.
/// R^2 is computed as 1 - SSE/SST; SSR is reported separately because the
/// two forms of the definition agree only when SSE + SSR = SST, which holds
/// for affine fits with intercept but not for nonlinear models.
struct MetricsReport {
    std::size_t n = 0;
    double r_squared = 0.0;
    double pearson_r = 0.0;
    double mae = 0.0;
    double rmse = 0.0;
    double sse = 0.0;
    double ssr = 0.0;
    double sst = 0.0;
};

inline MetricsReport compute_metrics(std::span<const double> y_true,
                                     std::span<const double> y_pred) {
    detail::check_same_length(y_true, y_pred, 2);
    MetricsReport rep;
    rep.n = y_true.size();
    const double ybar = detail::mean(y_true);
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const double e = y_true[i] - y_pred[i];
        const double d = y_true[i] - ybar;
        const double g = y_pred[i] - ybar;
        rep.sse += e * e;
        rep.sst += d * d;
        rep.ssr += g * g;
    }
    if (rep.sst == 0.0) throw Error(Errc::zero_variance, "constant y_true, R^2 undefined");
    rep.r_squared = 1.0 - rep.sse / rep.sst;
    rep.mae = mae(y_true, y_pred);
    rep.rmse = rmse(y_true, y_pred);
    // Degenerate constant predictions have no defined correlation; report 0
    // (maximal randomness) instead of failing the whole evaluation.
    bool pred_constant = true;
    for (std::size_t i = 1; i < y_pred.size(); ++i)
        if (y_pred[i] != y_pred[0]) {
            pred_constant = false;
            break;
        }
    rep.pearson_r = pred_constant ? 0.0 : pearson_r(y_true, y_pred);
    return rep;
}

/// Predicts the named rows in physical units and aggregates every metric.
inline MetricsReport evaluate(const MlpModel& model, const Dataset& data,
                              std::span<const std::string> ids) {
    if (ids.empty()) throw Error(Errc::empty_set, "evaluate over empty id set");
    const std::vector<Prediction> preds = predict(model, data, ids);
    std::vector<double> y_true, y_pred;
    y_true.reserve(ids.size());
    y_pred.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        y_true.push_back(data.row(ids[i]).target);
        y_pred.push_back(preds[i].y_pred);
    }
    return compute_metrics(y_true, y_pred);
}

}  // namespace powercast
