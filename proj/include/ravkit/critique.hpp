#pragma once

#include "ravkit/metrics.hpp"
#include "ravkit/trust.hpp"

#include <json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ravkit::critique {

inline constexpr std::string_view kFindingSchema = "ravkit-finding/1";

/// Whether the property a demo tests held on its inputs.
enum class Verdict : std::uint8_t { holds, violated };

std::string_view verdict_name(Verdict v);

struct CritiqueFinding {
    std::string kind;
    nlohmann::json inputs;
    nlohmann::json scores;
    Verdict verdict = Verdict::holds;
    std::string narrative;

    bool operator==(const CritiqueFinding&) const = default;
};

/// Canonical JSON (sorted keys, six-decimal reals) carrying kFindingSchema.
std::string render_finding(const CritiqueFinding& finding);
/// A JSON array of findings.
std::string render_findings(const std::vector<CritiqueFinding>& findings);
/// Short human-readable form, one block per finding.
std::string render_findings_text(const std::vector<CritiqueFinding>& findings);

/// Swaps the counts of two control classes and compares ActSec.
///
/// The verdict holds when ActSec is unchanged. It must hold when both classes
/// share a meta-class or carry equal counts; a cross-class swap that happens to
/// leave the score unchanged is reported as discovered. Throws InputError when
/// from == to.
CritiqueFinding permutation_demo(const Scope& scope, ControlClass from, ControlClass to);

struct CollisionBounds {
    Count porosity = 3;    // each of visibility, access, trust
    Count control = 3;     // each control class
    Count limitation = 3;  // each limitation category

    static CollisionBounds uniform(Count n) { return {n, n, n}; }
};

struct CollisionStats {
    /// Scope configurations covered, counting every split of the counts.
    std::uint64_t configurations = 0;
    /// Distinct score computations after merging configurations the pipeline cannot tell apart.
    std::uint64_t evaluations = 0;
    /// Groups of evaluations chained within epsilon of each other.
    std::uint64_t collision_classes = 0;
    /// Groups containing two different porosity or limitation structures.
    std::uint64_t nontrivial_classes = 0;
};

struct CollisionSearch {
    std::vector<CritiqueFinding> findings;
    CollisionStats stats;
};

inline constexpr std::size_t kDefaultMaxFindings = 20;

/// Exhaustive enumeration of scopes within `bounds`. Reports pairs with
/// |ActSec1 - ActSec2| <= epsilon whose porosity (visibility + access, trust) or
/// limitation counts differ; pairs separated only by control counts are left
/// out. At most `max_findings` groups are reported, chosen by a seeded shuffle
/// when there are more. Zero-porosity scopes with limitations are skipped.
/// Throws InputError for a negative epsilon or bounds too large to enumerate.
CollisionSearch collision_search(const CollisionBounds& bounds, double epsilon, std::uint64_t seed,
                                 std::size_t max_findings = kDefaultMaxFindings);

/// Every pair of distinct members of `family` whose scores lie within epsilon,
/// labelled "within-meta-class permutation" or "structural".
std::vector<CritiqueFinding> find_collisions(std::span<const Scope> family, double epsilon);

/// All distinct scopes reachable by permuting control counts inside each meta-class.
std::vector<Scope> permutation_family(const Scope& scope);

/// Same porosity and limitations, and per meta-class the same multiset of control counts.
bool is_within_meta_class_permutation(const Scope& a, const Scope& b);

/// 100 + F - A - L - A/100*(F - L) + F*L/100 where L is ln(1 + 100*seclim)
/// (power 1) or its square (power 2).
double prose_actual_security(double opsec_base, double fc_base, const Rational& seclim_sum, int log_power);

/// Expanded structure against the prose formula on the toy scope and the empty scope.
CritiqueFinding formula_discrepancy_demo();

/// A fully controlled scope (every class at opsec_sum, no limitations) against 100.
CritiqueFinding balance_demo(Count opsec_sum = 1);

/// Searches small applicant records for a partner whose average-vs-max
/// ordering against `record` disagrees. Throws DomainError when `record` has
/// fewer than two defined consistency ratios.
CritiqueFinding trust_aggregation_demo(const trust::ApplicantRecord& record);

/// Age-50 record with one offense against a community of 5000 with 156
/// employees, compared within `tolerance`.
CritiqueFinding liability_equivalence_demo(double tolerance);

/// The toy scope: one visible host, one open port, one authentication control,
/// one limitation of each category.
Scope toy_scope();

}  // namespace ravkit::critique
