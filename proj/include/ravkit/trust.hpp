#pragma once

#include "ravkit/metrics.hpp"
#include "ravkit/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ravkit::trust {

enum class TrustProperty : std::uint8_t {
    size,
    symmetry,
    visibility,
    subjugation,
    consistency,
    integrity,
    offsets,
    value,
    components,
    porosity,
};

inline constexpr std::array<TrustProperty, 10> kAllTrustProperties = {
    TrustProperty::size,      TrustProperty::symmetry,  TrustProperty::visibility, TrustProperty::subjugation,
    TrustProperty::consistency, TrustProperty::integrity, TrustProperty::offsets,  TrustProperty::value,
    TrustProperty::components, TrustProperty::porosity,
};

std::string_view property_name(TrustProperty p);
std::optional<TrustProperty> parse_trust_property(std::string_view name);

enum class ReferencePolarity : std::uint8_t { positive, neutral, negative };

struct Reference {
    std::string employer;
    ReferencePolarity polarity = ReferencePolarity::positive;

    bool operator==(const Reference&) const = default;
};

struct ApplicantRecord {
    std::string id;
    Count months_unemployed = 0;
    Count months_eligible = 0;
    Count criminal_offenses_known = 0;
    Count age_years = 0;
    Count legal_adult_age = 18;
    std::vector<Reference> references;
    Count past_employer_count = 0;
    Rational hours_alone_per_day;
    Rational working_hours_per_day;
    Count employees_in_community = 0;
    Count community_population = 0;

    Count references_with(ReferencePolarity polarity) const;

    bool operator==(const ApplicantRecord&) const = default;
};

/// Throws InputError when a record invariant fails: unemployment beyond the
/// eligible months, more references than past employers, more hours alone than
/// working hours, negative hours, or more employees than community members.
void validate(const ApplicantRecord& record);

struct RuleResult {
    TrustProperty property = TrustProperty::consistency;
    std::string rule_id;
    std::optional<Rational> value;
    std::string undefined_reason;
    /// Sub-ratios left out of a defined combined value, with their reasons.
    std::string excluded;

    bool defined() const { return value.has_value(); }
};

enum class CombineMode : std::uint8_t { average, sum, max };

std::string_view mode_name(CombineMode mode);
std::optional<CombineMode> parse_combine_mode(std::string_view name);

/// Throws DomainError on an empty list.
Rational combine_values(std::span<const Rational> values, CombineMode mode);

struct TrustScore {
    /// One entry per property that received at least one result.
    std::map<TrustProperty, std::optional<Rational>> per_property;
    Rational combined;
    CombineMode mode = CombineMode::average;
    std::vector<TrustProperty> undefined_properties;
};

/// The three consistency ratios: months unemployed per eligible month,
/// offenses per adult year, and neutral or negative references per past employer.
std::array<RuleResult, 3> consistency_ratios(const ApplicantRecord& record);

/// Combines the defined consistency ratios (the rule records their average).
/// Undefined ratios are skipped and named in the reason; if all three are
/// undefined the result is undefined.
RuleResult consistency_score(const ApplicantRecord& record, CombineMode mode = CombineMode::average);

/// Employees living in the applicant's community per community member.
RuleResult porosity_rule(const ApplicantRecord& record);

/// Hours working alone, unassisted and unmonitored per working hour.
RuleResult unmonitored_hours_rule(const ApplicantRecord& record,
                                  TrustProperty property = TrustProperty::subjugation);

enum class RecordField : std::uint8_t {
    months_unemployed,
    months_eligible,
    criminal_offenses_known,
    age_years,
    legal_adult_age,
    adult_years,
    references_positive,
    references_neutral,
    references_negative,
    references_not_positive,
    past_employer_count,
    hours_alone_per_day,
    working_hours_per_day,
    employees_in_community,
    community_population,
};

std::string_view field_name(RecordField field);
std::optional<RecordField> parse_record_field(std::string_view name);

/// adult_years is age minus legal adult age and may be negative.
Rational field_value(const ApplicantRecord& record, RecordField field);

/// A ratio rule declared as data; used to attach rules beyond the built-in ones.
struct RatioRule {
    std::string id;
    RecordField numerator = RecordField::months_unemployed;
    RecordField denominator = RecordField::months_eligible;
    TrustProperty property = TrustProperty::consistency;
};

/// Undefined when the denominator is not positive.
RuleResult evaluate_rule(const ApplicantRecord& record, const RatioRule& rule);

/// consistency_score, porosity_rule and unmonitored_hours_rule in that order.
std::vector<RuleResult> builtin_rules(const ApplicantRecord& record,
                                      TrustProperty unmonitored_property = TrustProperty::subjugation);

/// Averages results per property, then combines the defined per-property values.
/// Throws DomainError when every result is undefined.
TrustScore trust_combine(std::span<const RuleResult> results, CombineMode mode);

}  // namespace ravkit::trust
