#pragma once

#include "ravkit/symbolic/rational_function.hpp"

#include <string_view>

namespace ravkit::symbolic {

/// Parses an arithmetic expression into a canonical rational function.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' integer)?
///   primary := number | identifier | '(' expr ')'
///
/// Numbers are integers or decimals. Throws InputError with the byte offset of
/// the offending token.
RationalFunction parse_rational_function(std::string_view text);

/// Parses "name=value,name=value" where each value is an integer, decimal or n/d.
Assignment parse_assignment(std::string_view text);

}  // namespace ravkit::symbolic
