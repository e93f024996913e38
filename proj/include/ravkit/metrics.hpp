#pragma once

#include "ravkit/rational.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace ravkit {

using Count = std::uint64_t;

enum class ControlClass : std::uint8_t {
    authentication,
    indemnification,
    resilience,
    subjugation,
    continuity,
    non_repudiation,
    integrity,
    privacy,
    confidentiality,
    alarm,
};

inline constexpr std::size_t kControlClassCount = 10;

inline constexpr std::array<ControlClass, kControlClassCount> kAllControlClasses = {
    ControlClass::authentication, ControlClass::indemnification, ControlClass::resilience,
    ControlClass::subjugation,    ControlClass::continuity,      ControlClass::non_repudiation,
    ControlClass::integrity,      ControlClass::privacy,         ControlClass::confidentiality,
    ControlClass::alarm,
};

enum class MetaClass : std::uint8_t { a, b };

// A = {Au, Id, Re, Su, Ct}, B = {NR, It, Pr, Cf, Al}.
constexpr MetaClass meta_class(ControlClass c)
{
    return static_cast<std::size_t>(c) < 5 ? MetaClass::a : MetaClass::b;
}

constexpr std::size_t index_of(ControlClass c) { return static_cast<std::size_t>(c); }

std::string_view control_name(ControlClass c);
std::string_view control_abbreviation(ControlClass c);
std::optional<ControlClass> parse_control_class(std::string_view name);

enum class LimitationKind : std::uint8_t { vulnerability, weakness, concern, exposure, anomaly };

inline constexpr std::size_t kLimitationKindCount = 5;

inline constexpr std::array<LimitationKind, kLimitationKindCount> kAllLimitationKinds = {
    LimitationKind::vulnerability, LimitationKind::weakness, LimitationKind::concern,
    LimitationKind::exposure,      LimitationKind::anomaly,
};

constexpr std::size_t index_of(LimitationKind k) { return static_cast<std::size_t>(k); }

/// Plural field name used in scope files and reports ("vulnerabilities", ...).
std::string_view limitation_name(LimitationKind k);
std::optional<LimitationKind> parse_limitation_kind(std::string_view name);

enum class Channel : std::uint8_t { human, physical, wireless, telecom, data_network, aggregate };

std::string_view channel_name(Channel c);
std::optional<Channel> parse_channel(std::string_view name);

struct PorosityCounts {
    Count visibility = 0;
    Count access = 0;
    Count trust = 0;

    bool operator==(const PorosityCounts&) const = default;
};

struct ControlCounts {
    std::array<Count, kControlClassCount> counts{};

    Count& operator[](ControlClass c) { return counts[index_of(c)]; }
    Count operator[](ControlClass c) const { return counts[index_of(c)]; }
    Count sum() const;

    bool operator==(const ControlCounts&) const = default;
};

struct LimitationCounts {
    std::array<Count, kLimitationKindCount> counts{};

    Count& operator[](LimitationKind k) { return counts[index_of(k)]; }
    Count operator[](LimitationKind k) const { return counts[index_of(k)]; }
    bool any() const;

    bool operator==(const LimitationCounts&) const = default;
};

/// One testable unit: a channel, a vector and an index with its counts.
struct Scope {
    std::string id;
    Channel channel = Channel::data_network;
    std::string vector;
    std::string index;
    PorosityCounts porosity;
    ControlCounts controls;
    LimitationCounts limitations;

    bool operator==(const Scope&) const = default;
};

/// Throws InputError when the id is empty.
void validate(const Scope& scope);

/// Rational-valued counts. Integer scopes convert losslessly; fractional values
/// arise when formal units are assigned something other than 1.
struct ScopeQuantities {
    std::array<Rational, 3> porosity;  // visibility, access, trust
    std::array<Rational, kControlClassCount> controls;
    std::array<Rational, kLimitationKindCount> limitations;

    static ScopeQuantities from(const Scope& scope);
};

struct MissingControls {
    std::array<Rational, kControlClassCount> per_class;
    std::array<Rational, kControlClassCount> true_controls;
    Rational sum;
    Rational class_a;
    Rational class_b;
};

struct LimitationWeights {
    std::array<Rational, kLimitationKindCount> weights;
    Rational mc_vg;
};

struct RavBreakdown {
    Rational opsec_sum;
    double opsec_base = 0.0;
    Rational lc_sum;
    std::array<Rational, kControlClassCount> mc_per_class;
    std::array<Rational, kControlClassCount> tc_per_class;
    Rational mc_sum;
    Rational mc_class_a;
    Rational mc_class_b;
    Rational mc_vg;
    double tc_base = 0.0;
    double fc_base = 0.0;
    std::array<Rational, kLimitationKindCount> weights;
    Rational seclim_sum;
    double seclim_base = 0.0;
    double actsec = 0.0;

    bool operator==(const RavBreakdown&) const = default;
};

Rational opsec_sum(const PorosityCounts& porosity);

/// ln(1 + scale * magnitude)^2. Zero exactly when magnitude is zero.
/// Throws DomainError for a negative magnitude or non-positive scale.
double base_value(const Rational& scale, const Rational& magnitude);

/// MC = max(opsec - LC, 0) and TC = min(LC, opsec) for every class.
MissingControls missing_controls(const Rational& opsec_sum,
                                 std::span<const Rational, kControlClassCount> controls);
MissingControls missing_controls(const Rational& opsec_sum, const ControlCounts& controls);

/// Per-category limitation weights (w_V, w_W, w_C, w_E, w_A) and MC_vg.
///
/// With opsec_sum = 0 the weights are undefined; the call returns all-zero weights
/// when every limitation count is zero and throws DomainError otherwise.
LimitationWeights limitation_weights(std::span<const Rational, 3> porosity, const Rational& opsec_sum,
                                     const Rational& mc_sum, const Rational& mc_class_a,
                                     const Rational& mc_class_b,
                                     std::span<const Rational, kLimitationKindCount> limitations);

/// Sum over the five categories of count * weight^2.
Rational security_limitations_sum(std::span<const Rational, kLimitationKindCount> limitations,
                                  std::span<const Rational, kLimitationKindCount> weights);

/// S*((A - F)/100 - 1) - (F + 100)*A/100 + F + 100 over the three base values.
double combine_actual_security(double opsec_base, double fc_base, double seclim_base);

RavBreakdown actual_security(const ScopeQuantities& quantities);
RavBreakdown actual_security(const Scope& scope);

/// Component-wise sum of all counts. Labels become "aggregate".
/// Throws InputError on an empty list.
Scope aggregate_scopes(std::span<const Scope> scopes);

}  // namespace ravkit
