#include "ravkit/trust.hpp"

#include "ravkit/errors.hpp"

#include <algorithm>

namespace ravkit::trust {

namespace {

constexpr std::array<std::string_view, 10> kPropertyNames = {
    "size",        "symmetry",  "visibility", "subjugation", "consistency",
    "integrity",   "offsets",   "value",      "components",  "porosity",
};

constexpr std::array<std::string_view, 15> kFieldNames = {
    "months_unemployed",
    "months_eligible",
    "criminal_offenses_known",
    "age_years",
    "legal_adult_age",
    "adult_years",
    "references_positive",
    "references_neutral",
    "references_negative",
    "references_not_positive",
    "past_employer_count",
    "hours_alone_per_day",
    "working_hours_per_day",
    "employees_in_community",
    "community_population",
};

RuleResult ratio(TrustProperty property, std::string id, const Rational& numerator,
                 const Rational& denominator, std::string_view reason_if_undefined)
{
    RuleResult r;
    r.property = property;
    r.rule_id = std::move(id);
    if (denominator > 0) {
        r.value = Rational(numerator / denominator);
    } else {
        r.undefined_reason = std::string(reason_if_undefined);
    }
    return r;
}

// Rules whose value cannot exceed 1 on a record that passes validate().
RuleResult bounded_by_one(RuleResult r)
{
    if (r.value && *r.value > 1) {
        throw InputError(r.rule_id + " = " + to_string(*r.value) + " exceeds 1; the record is inconsistent");
    }
    return r;
}

}  // namespace

std::string_view property_name(TrustProperty p) { return kPropertyNames[static_cast<std::size_t>(p)]; }

std::optional<TrustProperty> parse_trust_property(std::string_view name)
{
    for (TrustProperty p : kAllTrustProperties) {
        if (property_name(p) == name) return p;
    }
    return std::nullopt;
}

std::string_view mode_name(CombineMode mode)
{
    switch (mode) {
    case CombineMode::average: return "average";
    case CombineMode::sum: return "sum";
    case CombineMode::max: return "max";
    }
    return "average";
}

std::optional<CombineMode> parse_combine_mode(std::string_view name)
{
    if (name == "average") return CombineMode::average;
    if (name == "sum") return CombineMode::sum;
    if (name == "max") return CombineMode::max;
    return std::nullopt;
}

Count ApplicantRecord::references_with(ReferencePolarity polarity) const
{
    return static_cast<Count>(std::count_if(references.begin(), references.end(),
                                            [&](const Reference& r) { return r.polarity == polarity; }));
}

void validate(const ApplicantRecord& r)
{
    if (r.months_eligible > 0 && r.months_unemployed > r.months_eligible) {
        throw InputError("months_unemployed exceeds months_eligible");
    }
    if (r.references.size() > r.past_employer_count) {
        throw InputError("more references than past employers");
    }
    if (r.hours_alone_per_day < 0 || r.working_hours_per_day < 0) {
        throw InputError("hours must be non-negative");
    }
    if (r.hours_alone_per_day > r.working_hours_per_day) {
        throw InputError("hours_alone_per_day exceeds working_hours_per_day");
    }
    if (r.community_population > 0 && r.employees_in_community > r.community_population) {
        throw InputError("employees_in_community exceeds community_population");
    }
}

Rational combine_values(std::span<const Rational> values, CombineMode mode)
{
    if (values.empty()) throw DomainError("nothing to combine");
    Rational out;
    switch (mode) {
    case CombineMode::average:
        for (const auto& v : values) out += v;
        out /= Rational(static_cast<unsigned long>(values.size()));
        break;
    case CombineMode::sum:
        for (const auto& v : values) out += v;
        break;
    case CombineMode::max:
        out = *std::max_element(values.begin(), values.end());
        break;
    }
    return out;
}

std::array<RuleResult, 3> consistency_ratios(const ApplicantRecord& r)
{
    const Rational adult_years = field_value(r, RecordField::adult_years);
    return {
        bounded_by_one(ratio(TrustProperty::consistency, "consistency.unemployment", Rational(r.months_unemployed),
                             Rational(r.months_eligible), "no eligible months")),
        ratio(TrustProperty::consistency, "consistency.offenses", Rational(r.criminal_offenses_known),
              adult_years, "age does not exceed the legal adult age"),
        bounded_by_one(ratio(TrustProperty::consistency, "consistency.references",
                             field_value(r, RecordField::references_not_positive), Rational(r.past_employer_count),
                             "no past employers")),
    };
}

RuleResult consistency_score(const ApplicantRecord& record, CombineMode mode)
{
    RuleResult out;
    out.property = TrustProperty::consistency;
    out.rule_id = "consistency";
    std::vector<Rational> defined;
    std::string skipped;
    for (const auto& r : consistency_ratios(record)) {
        if (r.defined()) {
            defined.push_back(*r.value);
        } else {
            if (!skipped.empty()) skipped += "; ";
            skipped += r.rule_id + ": " + r.undefined_reason;
        }
    }
    if (defined.empty()) {
        out.undefined_reason = skipped;
    } else {
        out.value = combine_values(defined, mode);
        out.excluded = skipped;
    }
    return out;
}

RuleResult porosity_rule(const ApplicantRecord& record)
{
    return bounded_by_one(evaluate_rule(record, RatioRule{"porosity.community", RecordField::employees_in_community,
                                                          RecordField::community_population, TrustProperty::porosity}));
}

RuleResult unmonitored_hours_rule(const ApplicantRecord& record, TrustProperty property)
{
    return bounded_by_one(evaluate_rule(record, RatioRule{"unmonitored.hours", RecordField::hours_alone_per_day,
                                                          RecordField::working_hours_per_day, property}));
}

std::string_view field_name(RecordField field) { return kFieldNames[static_cast<std::size_t>(field)]; }

std::optional<RecordField> parse_record_field(std::string_view name)
{
    for (std::size_t i = 0; i < kFieldNames.size(); ++i) {
        if (kFieldNames[i] == name) return static_cast<RecordField>(i);
    }
    return std::nullopt;
}

Rational field_value(const ApplicantRecord& r, RecordField field)
{
    switch (field) {
    case RecordField::months_unemployed: return Rational(r.months_unemployed);
    case RecordField::months_eligible: return Rational(r.months_eligible);
    case RecordField::criminal_offenses_known: return Rational(r.criminal_offenses_known);
    case RecordField::age_years: return Rational(r.age_years);
    case RecordField::legal_adult_age: return Rational(r.legal_adult_age);
    case RecordField::adult_years: return Rational(r.age_years) - Rational(r.legal_adult_age);
    case RecordField::references_positive: return Rational(r.references_with(ReferencePolarity::positive));
    case RecordField::references_neutral: return Rational(r.references_with(ReferencePolarity::neutral));
    case RecordField::references_negative: return Rational(r.references_with(ReferencePolarity::negative));
    case RecordField::references_not_positive:
        return Rational(r.references_with(ReferencePolarity::neutral) +
                        r.references_with(ReferencePolarity::negative));
    case RecordField::past_employer_count: return Rational(r.past_employer_count);
    case RecordField::hours_alone_per_day: return r.hours_alone_per_day;
    case RecordField::working_hours_per_day: return r.working_hours_per_day;
    case RecordField::employees_in_community: return Rational(r.employees_in_community);
    case RecordField::community_population: return Rational(r.community_population);
    }
    return Rational(0);
}

RuleResult evaluate_rule(const ApplicantRecord& record, const RatioRule& rule)
{
    return ratio(rule.property, rule.id, field_value(record, rule.numerator),
                 field_value(record, rule.denominator),
                 std::string(field_name(rule.denominator)) + " is not positive");
}

std::vector<RuleResult> builtin_rules(const ApplicantRecord& record, TrustProperty unmonitored_property)
{
    return {consistency_score(record), porosity_rule(record), unmonitored_hours_rule(record, unmonitored_property)};
}

TrustScore trust_combine(std::span<const RuleResult> results, CombineMode mode)
{
    TrustScore score;
    score.mode = mode;
    std::map<TrustProperty, std::vector<Rational>> grouped;
    for (const auto& r : results) {
        auto& bucket = grouped[r.property];
        if (r.defined()) bucket.push_back(*r.value);
    }
    std::vector<Rational> defined;
    for (const auto& [property, values] : grouped) {
        if (values.empty()) {
            score.per_property.emplace(property, std::nullopt);
            score.undefined_properties.push_back(property);
        } else {
            Rational avg = combine_values(values, CombineMode::average);
            score.per_property.emplace(property, avg);
            defined.push_back(avg);
        }
    }
    if (defined.empty()) throw DomainError("every trust rule result is undefined");
    score.combined = combine_values(defined, mode);
    return score;
}

}  // namespace ravkit::trust
