#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace powercast {

/// Error categories surfaced by the library. The CLI maps each value to a
/// distinct process exit code, so the numbering is part of the interface.
enum class Errc {
    config_error = 0,
    io_error,
    missing_column,
    unparseable_cell,
    duplicate_city_id,
    empty_dataset,
    unknown_id,
    unknown_feature,
    fraction_out_of_range,
    dimension_mismatch,
    length_mismatch,
    empty_batch,
    empty_set,
    zero_variance,
    divergence_detected,
};

inline std::string_view errc_name(Errc c) {
    switch (c) {
        case Errc::config_error:          return "config_error";
        case Errc::io_error:              return "io_error";
        case Errc::missing_column:        return "missing_column";
        case Errc::unparseable_cell:      return "unparseable_cell";
        case Errc::duplicate_city_id:     return "duplicate_city_id";
        case Errc::empty_dataset:         return "empty_dataset";
        case Errc::unknown_id:            return "unknown_id";
        case Errc::unknown_feature:       return "unknown_feature";
        case Errc::fraction_out_of_range: return "fraction_out_of_range";
        case Errc::dimension_mismatch:    return "dimension_mismatch";
        case Errc::length_mismatch:       return "length_mismatch";
        case Errc::empty_batch:           return "empty_batch";
        case Errc::empty_set:             return "empty_set";
        case Errc::zero_variance:         return "zero_variance";
        case Errc::divergence_detected:   return "divergence_detected";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace powercast
