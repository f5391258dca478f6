#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "powercast/csv.hpp"
#include "powercast/errors.hpp"
#include "powercast/schema.hpp"

namespace powercast {

struct CityRecord {
    std::string city_id;
    std::vector<double> features;  // schema order
    double target = 0.0;
};

/// Immutable table of city records, columns fixed by a FeatureSchema.
class Dataset {
public:
    Dataset(FeatureSchema schema, std::vector<CityRecord> rows)
        : schema_(std::move(schema)), rows_(std::move(rows)) {
        if (rows_.empty()) throw Error(Errc::empty_dataset, "dataset has no rows");
        index_.reserve(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const auto& r = rows_[i];
            if (r.features.size() != schema_.n_features())
                throw Error(Errc::dimension_mismatch,
                            "row '" + r.city_id + "' has " + std::to_string(r.features.size()) +
                                " features, schema has " + std::to_string(schema_.n_features()));
            if (!index_.emplace(r.city_id, i).second)
                throw Error(Errc::duplicate_city_id, "city_id '" + r.city_id + "' appears twice");
            for (double v : r.features)
                if (!std::isfinite(v))
                    throw Error(Errc::unparseable_cell,
                                "non-finite feature value in row '" + r.city_id + "'");
            if (!std::isfinite(r.target))
                throw Error(Errc::unparseable_cell,
                            "non-finite target value in row '" + r.city_id + "'");
        }
    }

    const FeatureSchema& schema() const { return schema_; }
    const std::vector<CityRecord>& rows() const { return rows_; }
    std::size_t n_rows() const { return rows_.size(); }

    bool has_id(const std::string& id) const { return index_.count(id) != 0; }

    const CityRecord& row(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw Error(Errc::unknown_id, "unknown city_id '" + id + "'");
        return rows_[it->second];
    }

    std::vector<std::string> ids() const {
        std::vector<std::string> out;
        out.reserve(rows_.size());
        for (const auto& r : rows_) out.push_back(r.city_id);
        return out;
    }

    /// Copy with exactly one feature column replaced. Used by the
    /// permutation-importance module; target and city ids are untouched.
    Dataset with_column(std::size_t col, const std::vector<double>& values) const {
        if (values.size() != rows_.size())
            throw Error(Errc::length_mismatch, "column replacement length mismatch");
        std::vector<CityRecord> rows = rows_;
        for (std::size_t i = 0; i < rows.size(); ++i) rows[i].features[col] = values[i];
        return Dataset(schema_, std::move(rows));
    }

private:
    FeatureSchema schema_;
    std::vector<CityRecord> rows_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct LoadStats {
    std::size_t rows_read = 0;
    std::size_t rows_rejected = 0;           // incomplete rows, dropped not imputed
    std::vector<std::size_t> rejected_lines;  // 1-based file lines
};

namespace detail {

// Missing markers. Anything else that fails to parse as a finite double is a
// hard error, not missing data.
inline bool cell_is_missing(std::string_view s) {
    if (s.empty()) return true;
    if (s.size() > 4) return false;
    std::string lower;
    for (char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return lower == "na" || lower == "nan" || lower == "null" || lower == "n/a";
}

inline std::optional<double> parse_cell(std::string_view s) {
    // Trim ASCII whitespace.
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    if (cell_is_missing(s)) return std::nullopt;
    const std::string tmp(s);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(tmp.c_str(), &end);
    if (end != tmp.c_str() + tmp.size() || errno == ERANGE || !std::isfinite(v))
        throw Error(Errc::unparseable_cell, "cannot parse numeric cell '" + tmp + "'");
    return v;
}

}  // namespace detail

/// Loads a CSV into a Dataset, reordering columns to schema order. The file
/// must have a header with `city_id`, every schema feature and the target;
/// extra columns are ignored. Rows with missing cells are dropped, never
/// imputed; malformed numeric text is a hard error.
inline Dataset load_csv(const std::string& path, const FeatureSchema& schema,
                        LoadStats* stats = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");

    std::vector<std::string> header;
    std::size_t line_no = 0;
    if (!csv::read_row(in, header, line_no))
        throw Error(Errc::empty_dataset, "'" + path + "' is empty");

    std::unordered_map<std::string, std::size_t> col_of;
    for (std::size_t i = 0; i < header.size(); ++i) col_of.emplace(header[i], i);

    auto require_col = [&](const std::string& name) {
        auto it = col_of.find(name);
        if (it == col_of.end()) throw Error(Errc::missing_column, name);
        return it->second;
    };

    const std::size_t id_col = require_col("city_id");
    std::vector<std::size_t> feature_cols;
    feature_cols.reserve(schema.n_features());
    for (const auto& f : schema.features()) feature_cols.push_back(require_col(f.name));
    const std::size_t target_col = require_col(schema.target_name());

    std::vector<CityRecord> rows;
    LoadStats local;
    std::vector<std::string> cells;
    while (csv::read_row(in, cells, line_no)) {
        if (cells.size() == 1 && cells[0].empty()) continue;  // trailing blank line
        ++local.rows_read;
        if (cells.size() < header.size())
            throw Error(Errc::unparseable_cell,
                        "line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " cells, got " +
                            std::to_string(cells.size()));
        CityRecord rec;
        rec.city_id = cells[id_col];
        if (rec.city_id.empty())
            throw Error(Errc::unparseable_cell,
                        "line " + std::to_string(line_no) + ": empty city_id");
        bool complete = true;
        rec.features.reserve(schema.n_features());
        for (std::size_t c : feature_cols) {
            auto v = detail::parse_cell(cells[c]);
            if (!v) {
                complete = false;
                break;
            }
            rec.features.push_back(*v);
        }
        if (complete) {
            auto y = detail::parse_cell(cells[target_col]);
            if (!y)
                complete = false;
            else
                rec.target = *y;
        }
        if (!complete) {
            ++local.rows_rejected;
            local.rejected_lines.push_back(line_no);
            continue;
        }
        rows.push_back(std::move(rec));
    }
    if (stats) *stats = local;
    if (rows.empty())
        throw Error(Errc::empty_dataset, "'" + path + "' contains no complete rows");
    return Dataset(schema, std::move(rows));
}

/// Writes the canonical CSV layout: city_id, features in schema order, target.
inline void save_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot write '" + path + "'");
    const auto& schema = data.schema();

    std::vector<std::string> header;
    header.reserve(schema.n_features() + 2);
    header.push_back("city_id");
    for (const auto& f : schema.features()) header.push_back(f.name);
    header.push_back(schema.target_name());
    csv::write_row(out, header);

    char buf[64];
    auto fmt = [&buf](double v) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
        (void)ec;
        return std::string(buf, ptr);
    };
    std::vector<std::string> cells;
    for (const auto& r : data.rows()) {
        cells.clear();
        cells.push_back(r.city_id);
        for (double v : r.features) cells.push_back(fmt(v));
        cells.push_back(fmt(r.target));
        csv::write_row(out, cells);
    }
    if (!out) throw Error(Errc::io_error, "write failed for '" + path + "'");
}

}  // namespace powercast
