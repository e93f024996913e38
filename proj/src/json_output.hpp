#pragma once

#include "ravkit/rational.hpp"

#include <json.hpp>

#include <regex>
#include <string>

namespace ravkit::detail {

// Reals are emitted through a placeholder string so the JSON text keeps all six
// decimals ("100.000000" rather than "100.0"). Labels cannot contain control
// characters, so the marker never collides with input.
inline constexpr std::string_view kRealMarker = "\x01real:";

inline nlohmann::json fixed6(double value) { return std::string(kRealMarker) + format_fixed6(value); }

/// Replaces every floating-point number in `value` by its fixed6 placeholder.
inline nlohmann::json with_fixed_reals(const nlohmann::json& value)
{
    if (value.is_number_float()) return fixed6(value.get<double>());
    if (value.is_structured()) {
        nlohmann::json out = value;
        for (auto it = out.begin(); it != out.end(); ++it) *it = with_fixed_reals(*it);
        return out;
    }
    return value;
}

/// indent < 0 gives the compact single-line form without a trailing newline.
inline std::string dump(const nlohmann::json& document, int indent = 2)
{
    static const std::regex marker(R"re("\\u0001real:(-?[0-9]+\.[0-9]{6}|-?nan|-?inf)")re");
    std::string text = std::regex_replace(document.dump(indent), marker, "$1");
    if (indent >= 0) text += "\n";
    return text;
}

}  // namespace ravkit::detail
