#pragma once

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "powercast/errors.hpp"

namespace powercast::svg {

inline std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

namespace detail {

inline std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

inline double nice_step(double range, int target_ticks) {
    if (!(range > 0.0)) return 1.0;
    const double raw = range / target_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double snapped = norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0;
    return snapped * mag;
}

inline std::vector<double> ticks(double lo, double hi, int target = 6) {
    const double step = nice_step(hi - lo, target);
    std::vector<double> out;
    double v = std::ceil(lo / step) * step;
    for (; v <= hi + step * 1e-9; v += step) out.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
    return out;
}

inline std::string utc_timestamp() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Frame {
    int width, height;
    double x0, x1, y0, y1;  // plot area in pixels, y0 = top
    double lo_x, hi_x, lo_y, hi_y;

    double sx(double v) const { return x0 + (v - lo_x) / (hi_x - lo_x) * (x1 - x0); }
    double sy(double v) const { return y1 - (v - lo_y) / (hi_y - lo_y) * (y1 - y0); }
};

inline void open_svg(std::ostringstream& o, int width, int height, const std::string& title,
                     bool timestamp) {
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    if (timestamp)
        o << "  <metadata id=\"generated-at\">" << utc_timestamp() << "</metadata>\n";
    o << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"#ffffff\"/>\n";
    o << "  <text x=\"" << width / 2
      << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\" "
         "fill=\"#222222\">"
      << xml_escape(title) << "</text>\n";
}

inline void draw_grid(std::ostringstream& o, const Frame& f, const std::vector<double>& xticks,
                      const std::vector<double>& yticks,
                      const std::vector<std::string>* ylabels = nullptr) {
    o << "  <g stroke=\"#e4e4e4\" stroke-width=\"1\">\n";
    for (double v : xticks)
        o << "    <line x1=\"" << px(f.sx(v)) << "\" y1=\"" << px(f.y0) << "\" x2=\"" << px(f.sx(v))
          << "\" y2=\"" << px(f.y1) << "\"/>\n";
    for (double v : yticks)
        o << "    <line x1=\"" << px(f.x0) << "\" y1=\"" << px(f.sy(v)) << "\" x2=\"" << px(f.x1)
          << "\" y2=\"" << px(f.sy(v)) << "\"/>\n";
    o << "  </g>\n";
    o << "  <g font-family=\"sans-serif\" font-size=\"11\" fill=\"#444444\">\n";
    for (double v : xticks)
        o << "    <text x=\"" << px(f.sx(v)) << "\" y=\"" << px(f.y1 + 16)
          << "\" text-anchor=\"middle\">" << xml_escape(num(v)) << "</text>\n";
    for (std::size_t i = 0; i < yticks.size(); ++i) {
        const std::string label = ylabels ? (*ylabels)[i] : num(yticks[i]);
        o << "    <text x=\"" << px(f.x0 - 8) << "\" y=\"" << px(f.sy(yticks[i]) + 4)
          << "\" text-anchor=\"end\">" << xml_escape(label) << "</text>\n";
    }
    o << "  </g>\n";
    o << "  <rect x=\"" << px(f.x0) << "\" y=\"" << px(f.y0) << "\" width=\"" << px(f.x1 - f.x0)
      << "\" height=\"" << px(f.y1 - f.y0) << "\" fill=\"none\" stroke=\"#333333\"/>\n";
}

inline void axis_labels(std::ostringstream& o, const Frame& f, const std::string& x_label,
                        const std::string& y_label) {
    o << "  <g font-family=\"sans-serif\" font-size=\"13\" fill=\"#222222\">\n";
    o << "    <text x=\"" << px((f.x0 + f.x1) / 2) << "\" y=\"" << px(f.y1 + 40)
      << "\" text-anchor=\"middle\">" << xml_escape(x_label) << "</text>\n";
    o << "    <text x=\"18\" y=\"" << px((f.y0 + f.y1) / 2) << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 18 " << px((f.y0 + f.y1) / 2) << ")\">" << xml_escape(y_label)
      << "</text>\n";
    o << "  </g>\n";
}

}  // namespace detail

struct ScatterPoint {
    double actual = 0.0;
    double predicted = 0.0;
    bool flagged = false;  // drawn in a warning color (e.g. out-of-range input)
};

struct ScatterOptions {
    std::string title = "Predicted vs actual";
    std::string x_label = "actual";
    std::string y_label = "predicted";
    int width = 720;
    int height = 540;
    bool timestamp = false;
};

/// Scatter of predictions against actuals with a dashed identity line.
inline std::string scatter_svg(std::span<const ScatterPoint> points,
                               const ScatterOptions& opt = {}) {
    if (points.empty()) throw Error(Errc::empty_set, "scatter of no points");
    double lo = points[0].actual, hi = points[0].actual;
    for (const auto& p : points) {
        lo = std::min({lo, p.actual, p.predicted});
        hi = std::max({hi, p.actual, p.predicted});
    }
    if (lo == hi) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;

    detail::Frame f{opt.width, opt.height, 80.0, opt.width - 25.0, 44.0, opt.height - 58.0,
                    lo, hi, lo, hi};
    std::ostringstream o;
    detail::open_svg(o, opt.width, opt.height, opt.title, opt.timestamp);
    detail::draw_grid(o, f, detail::ticks(lo, hi), detail::ticks(lo, hi));
    detail::axis_labels(o, f, opt.x_label, opt.y_label);
    o << "  <line x1=\"" << detail::px(f.sx(lo)) << "\" y1=\"" << detail::px(f.sy(lo)) << "\" x2=\""
      << detail::px(f.sx(hi)) << "\" y2=\"" << detail::px(f.sy(hi))
      << "\" stroke=\"#999999\" stroke-dasharray=\"6 4\"/>\n";
    o << "  <g stroke=\"#ffffff\" stroke-width=\"0.5\">\n";
    for (const auto& p : points)
        o << "    <circle cx=\"" << detail::px(f.sx(p.actual)) << "\" cy=\""
          << detail::px(f.sy(p.predicted)) << "\" r=\"4\" fill=\""
          << (p.flagged ? "#d9730d" : "#3a6ea5") << "\" fill-opacity=\"0.85\"/>\n";
    o << "  </g>\n";
    o << "</svg>\n";
    return o.str();
}

struct CurveOptions {
    std::string title = "Training curve";
    std::string x_label = "epoch";
    std::string y_label = "mean squared error";
    int width = 720;
    int height = 540;
    bool timestamp = false;
};

/// Train and validation loss per epoch. Uses a log10 loss axis when every
/// value is positive, linear otherwise. best_epoch (1-based, 0 = none) gets a
/// dashed marker.
inline std::string training_curve_svg(std::span<const double> train_mse,
                                      std::span<const double> val_mse, std::size_t best_epoch,
                                      const CurveOptions& opt = {}) {
    if (train_mse.empty()) throw Error(Errc::empty_set, "training curve of no epochs");
    if (train_mse.size() != val_mse.size())
        throw Error(Errc::length_mismatch, "train/val curves differ in length");

    bool use_log = true;
    double lo = train_mse[0], hi = train_mse[0];
    for (std::size_t i = 0; i < train_mse.size(); ++i) {
        for (double v : {train_mse[i], val_mse[i]}) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            if (!(v > 0.0)) use_log = false;
        }
    }

    std::vector<double> yticks;
    std::vector<std::string> ylabels;
    auto tv = [&](double v) { return use_log ? std::log10(v) : v; };
    double ylo, yhi;
    if (use_log) {
        const double le = std::floor(tv(lo)), he = std::ceil(tv(hi));
        ylo = le;
        yhi = he > le ? he : le + 1.0;
        const int step = std::max(1, static_cast<int>(std::ceil((yhi - ylo) / 6.0)));
        for (int e = static_cast<int>(ylo); e <= static_cast<int>(yhi); e += step) {
            yticks.push_back(e);
            ylabels.push_back(detail::num(std::pow(10.0, e)));
        }
    } else {
        if (lo == hi) {
            lo -= 1.0;
            hi += 1.0;
        }
        ylo = lo - 0.05 * (hi - lo);
        yhi = hi + 0.05 * (hi - lo);
        yticks = detail::ticks(ylo, yhi);
        for (double v : yticks) ylabels.push_back(detail::num(v));
    }

    const double n = static_cast<double>(train_mse.size());
    const double xlo = n > 1 ? 1.0 : 0.0, xhi = n > 1 ? n : 2.0;
    detail::Frame f{opt.width, opt.height, 80.0, opt.width - 25.0, 44.0, opt.height - 58.0,
                    xlo, xhi, ylo, yhi};

    std::ostringstream o;
    detail::open_svg(o, opt.width, opt.height, opt.title, opt.timestamp);
    detail::draw_grid(o, f, detail::ticks(xlo, xhi), yticks, &ylabels);
    detail::axis_labels(o, f, opt.x_label, opt.y_label);

    auto polyline = [&](std::span<const double> series, const char* color) {
        o << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series.size(); ++i) {
            if (i) o << ' ';
            o << detail::px(f.sx(static_cast<double>(i + 1))) << ','
              << detail::px(f.sy(tv(series[i])));
        }
        o << "\"/>\n";
    };
    polyline(train_mse, "#3a6ea5");
    polyline(val_mse, "#d9730d");

    if (best_epoch >= 1 && best_epoch <= train_mse.size()) {
        const double bx = f.sx(static_cast<double>(best_epoch));
        o << "  <line x1=\"" << detail::px(bx) << "\" y1=\"" << detail::px(f.y0) << "\" x2=\""
          << detail::px(bx) << "\" y2=\"" << detail::px(f.y1)
          << "\" stroke=\"#777777\" stroke-dasharray=\"4 4\"/>\n";
        o << "  <text x=\"" << detail::px(bx + 4) << "\" y=\"" << detail::px(f.y0 + 14)
          << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#555555\">best</text>\n";
    }

    const double lx = f.x1 - 130, ly = f.y0 + 16;
    o << "  <g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
    o << "    <line x1=\"" << detail::px(lx) << "\" y1=\"" << detail::px(ly) << "\" x2=\""
      << detail::px(lx + 26) << "\" y2=\"" << detail::px(ly)
      << "\" stroke=\"#3a6ea5\" stroke-width=\"1.5\"/>\n";
    o << "    <text x=\"" << detail::px(lx + 32) << "\" y=\"" << detail::px(ly + 4)
      << "\">train</text>\n";
    o << "    <line x1=\"" << detail::px(lx) << "\" y1=\"" << detail::px(ly + 18) << "\" x2=\""
      << detail::px(lx + 26) << "\" y2=\"" << detail::px(ly + 18)
      << "\" stroke=\"#d9730d\" stroke-width=\"1.5\"/>\n";
    o << "    <text x=\"" << detail::px(lx + 32) << "\" y=\"" << detail::px(ly + 22)
      << "\">validation</text>\n";
    o << "  </g>\n";
    o << "</svg>\n";
    return o.str();
}

inline void save_svg(const std::string& content, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw Error(Errc::io_error, "failed writing '" + path + "'");
}

}  // namespace powercast::svg
