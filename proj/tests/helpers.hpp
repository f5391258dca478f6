#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <vector>

#include "powercast/dataset.hpp"
#include "powercast/errors.hpp"
#include "powercast/schema.hpp"

// Asserts that an expression throws powercast::Error with the given code.
// Only available when Catch2 is included first.
#ifdef CATCH_VERSION_MAJOR
#define REQUIRE_ERRC(expr, expected)                                       \
    do {                                                                   \
        try {                                                              \
            (void)(expr);                                                  \
            FAIL("expected error " << powercast::errc_name(expected));     \
        } catch (const powercast::Error& e_) {                             \
            INFO(e_.what());                                               \
            REQUIRE(e_.code() == (expected));                              \
        }                                                                  \
    } while (0)
#endif

namespace testutil {

// Small schema with n_core "core_i" and n_common "common_i" features.
inline powercast::FeatureSchema toy_schema(std::size_t n_core, std::size_t n_common) {
    std::vector<powercast::FeatureDescriptor> f;
    for (std::size_t i = 1; i <= n_core; ++i)
        f.push_back({"core_" + std::to_string(i), "u", powercast::FeatureCategory::core});
    for (std::size_t i = 1; i <= n_common; ++i)
        f.push_back({"common_" + std::to_string(i), "u", powercast::FeatureCategory::common});
    return powercast::FeatureSchema(std::move(f), "consumption", "kWh");
}

inline std::string toy_id(std::size_t i) {
    std::string n = std::to_string(i);
    return "c" + std::string(n.size() < 4 ? 4 - n.size() : 0, '0') + n;
}

inline powercast::Dataset toy_dataset(powercast::FeatureSchema schema,
                                      const std::vector<std::vector<double>>& rows,
                                      const std::vector<double>& targets) {
    std::vector<powercast::CityRecord> recs;
    for (std::size_t i = 0; i < rows.size(); ++i)
        recs.push_back({toy_id(i + 1), rows[i], targets[i]});
    return powercast::Dataset(std::move(schema), std::move(recs));
}

// Minimal XML well-formedness check for the SVG output: tag balance, quoted
// attributes, a single root element. Good enough to catch broken markup
// without pulling in a real parser.
inline bool xml_well_formed(const std::string& s, std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    std::vector<std::string> stack;
    std::size_t i = 0;
    const std::size_t n = s.size();
    bool seen_root = false;
    while (i < n) {
        if (s[i] != '<') {
            if (s[i] == '>') return fail("stray '>'");
            ++i;
            continue;
        }
        if (i + 1 < n && s[i + 1] == '?') {  // declaration
            std::size_t end = s.find("?>", i);
            if (end == std::string::npos) return fail("unterminated declaration");
            i = end + 2;
            continue;
        }
        if (i + 3 < n && s.compare(i, 4, "<!--") == 0) {
            std::size_t end = s.find("-->", i);
            if (end == std::string::npos) return fail("unterminated comment");
            i = end + 3;
            continue;
        }
        const bool closing = i + 1 < n && s[i + 1] == '/';
        std::size_t j = i + (closing ? 2 : 1);
        std::size_t name_start = j;
        while (j < n && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '-' ||
                         s[j] == '_' || s[j] == ':'))
            ++j;
        std::string name = s.substr(name_start, j - name_start);
        if (name.empty()) return fail("empty tag name");
        // scan to '>', tracking quotes
        bool self_closing = false;
        char quote = 0;
        while (j < n) {
            char c = s[j];
            if (quote) {
                if (c == quote) quote = 0;
            } else if (c == '"' || c == '\'') {
                quote = c;
            } else if (c == '>') {
                break;
            } else if (c == '/' && j + 1 < n && s[j + 1] == '>') {
                self_closing = true;
            }
            ++j;
        }
        if (j >= n) return fail("unterminated tag '" + name + "'");
        if (quote) return fail("unterminated attribute quote in '" + name + "'");
        if (closing) {
            if (stack.empty()) return fail("unmatched closing tag '" + name + "'");
            if (stack.back() != name)
                return fail("mismatched closing tag '" + name + "', open '" + stack.back() + "'");
            stack.pop_back();
        } else if (!self_closing) {
            if (stack.empty() && seen_root) return fail("content after root element");
            stack.push_back(name);
            seen_root = true;
        }
        i = j + 1;
    }
    if (!stack.empty()) return fail("unclosed tag '" + stack.back() + "'");
    if (!seen_root) return fail("no root element");
    return true;
}

}  // namespace testutil
