#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ravkit {

using Rational = mpq_class;

/// "n" for integers, "n/d" otherwise; always in lowest terms.
std::string to_string(const Rational& value);

/// Accepts "n", "n/d" and plain decimals such as "7.25" or "-0.5".
/// Throws InputError on anything else.
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);

/// Fixed six-decimal rendering used for every log-derived quantity.
std::string format_fixed6(double value);

/// The double obtained by reading back format_fixed6(value).
double round_fixed6(double value);

}  // namespace ravkit
