#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "powercast/errors.hpp"

namespace powercast::csv {

// Minimal RFC-4180 style CSV: comma separators, '"' quoting for fields that
// contain commas, quotes or newlines (several bundled column names do), "" as
// the escaped quote. UTF-8 passes through untouched.

inline std::string quote_field(std::string_view field) {
    const bool needs_quotes = field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline void write_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os.put(',');
        os << quote_field(fields[i]);
    }
    os.put('\n');
}

/// Reads one logical CSV record (quoted fields may span physical lines).
/// Returns false on end of input. Throws on an unterminated quoted field.
inline bool read_row(std::istream& is, std::vector<std::string>& fields, std::size_t& line_no) {
    fields.clear();
    int ch = is.get();
    if (ch == EOF) return false;

    std::string field;
    bool in_quotes = false;
    bool saw_any = false;
    ++line_no;

    while (ch != EOF) {
        const char c = static_cast<char>(ch);
        saw_any = true;
        if (in_quotes) {
            if (c == '"') {
                if (is.peek() == '"') {
                    field.push_back('"');
                    is.get();
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line_no;
                field.push_back(c);
            }
        } else if (c == '"' && field.empty()) {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            break;
        } else if (c != '\r') {
            field.push_back(c);
        }
        ch = is.get();
    }
    if (in_quotes)
        throw Error(Errc::unparseable_cell,
                    "unterminated quoted field around line " + std::to_string(line_no));
    if (saw_any) fields.push_back(std::move(field));
    return true;
}

inline std::vector<std::vector<std::string>> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::size_t line_no = 0;
    while (read_row(in, row, line_no)) rows.push_back(row);
    return rows;
}

}  // namespace powercast::csv
