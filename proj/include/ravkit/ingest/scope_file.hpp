#pragma once

#include "ravkit/metrics.hpp"
#include "ravkit/symbolic/rav.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace ravkit::ingest {

inline constexpr std::string_view kScopeSchema = "ravkit-scope/1";

/// Parsed form of a scope file:
///
///   {
///     "schema": "ravkit-scope/1",
///     "scopes": [ { "id": ..., "channel": ..., "vector": ..., "index": ...,
///                   "porosity": {...}, "controls": {...}, "limitations": {...} } ],
///     "units": { "<count kind>": "<variable>" }          (optional)
///   }
///
/// Missing counts default to 0, missing vector/index to "". Unknown keys are rejected.
struct ScopeDocument {
    std::vector<Scope> scopes;
    symbolic::UnitMap units;

    bool operator==(const ScopeDocument&) const = default;
};

/// Throws InputError naming the offending field, or the byte offset for syntax errors.
ScopeDocument parse_scope_document(std::string_view text);

/// Convenience wrapper returning only the scopes.
std::vector<Scope> parse_scope_file(std::string_view text);

/// Canonical rendering: every count present, keys sorted, two-space indent,
/// trailing newline. parse_scope_document(render_scope_document(d)) == d.
std::string render_scope_document(const ScopeDocument& document);

/// One scope object as it appears in a scope file; `where` prefixes error messages.
Scope scope_from_json(const nlohmann::json& value, const std::string& where);
/// Every field present, including zero counts.
nlohmann::json scope_to_json(const Scope& scope);

}  // namespace ravkit::ingest
