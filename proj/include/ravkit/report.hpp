#pragma once

#include "ravkit/metrics.hpp"
#include "ravkit/trust.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ravkit::report {

inline constexpr std::string_view kReportSchema = "ravkit-report/1";

enum class Format : std::uint8_t { text, json };

std::optional<Format> parse_format(std::string_view name);

/// Input echo plus every intermediate. Rationals appear as "n/d" strings,
/// log-derived values with six decimals. `sources` lists the ids of the scopes
/// an aggregate was built from and is omitted when empty.
std::string render_report(const RavBreakdown& breakdown, const Scope& scope, Format format,
                          const std::vector<std::string>& sources = {});

/// Several reports: a JSON array, or text reports separated by a blank line.
std::string render_reports(const std::vector<std::pair<Scope, RavBreakdown>>& items, Format format);

struct ParsedReport {
    Scope scope;
    RavBreakdown breakdown;
    std::vector<std::string> sources;
};

/// Reads a JSON rav report back. Rationals come back exactly; reals come back
/// as their six-decimal rendering. Throws InputError on anything malformed.
ParsedReport parse_report_json(std::string_view text);

/// Real-valued fields of `breakdown` rounded to six decimals, as a report stores them.
RavBreakdown rounded(const RavBreakdown& breakdown);

struct TrustEntry {
    trust::ApplicantRecord record;
    std::vector<trust::RuleResult> ratios;  // the individual rule outputs shown in the report
    trust::TrustScore score;
};

std::string render_trust_report(const std::vector<TrustEntry>& entries, Format format);

}  // namespace ravkit::report
