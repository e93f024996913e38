#include "ravkit/metrics.hpp"

#include "ravkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ravkit {

namespace {

constexpr std::array<std::string_view, kControlClassCount> kControlNames = {
    "authentication", "indemnification", "resilience", "subjugation",     "continuity",
    "non_repudiation", "integrity",      "privacy",    "confidentiality", "alarm",
};

constexpr std::array<std::string_view, kControlClassCount> kControlAbbreviations = {
    "Au", "Id", "Re", "Su", "Ct", "NR", "It", "Pr", "Cf", "Al",
};

constexpr std::array<std::string_view, kLimitationKindCount> kLimitationNames = {
    "vulnerabilities", "weaknesses", "concerns", "exposures", "anomalies",
};

constexpr std::array<std::string_view, 6> kChannelNames = {
    "human", "physical", "wireless", "telecom", "data-network", "aggregate",
};

Rational clamp_non_negative(const Rational& value)
{
    return value < 0 ? Rational(0) : value;
}

void require_non_negative(const Rational& value, std::string_view what)
{
    if (value < 0) {
        throw DomainError(std::string(what) + " must be non-negative, got " + to_string(value));
    }
}

}  // namespace

std::string_view control_name(ControlClass c) { return kControlNames[index_of(c)]; }

std::string_view control_abbreviation(ControlClass c) { return kControlAbbreviations[index_of(c)]; }

std::optional<ControlClass> parse_control_class(std::string_view name)
{
    for (ControlClass c : kAllControlClasses) {
        if (control_name(c) == name || control_abbreviation(c) == name) return c;
    }
    return std::nullopt;
}

std::string_view limitation_name(LimitationKind k) { return kLimitationNames[index_of(k)]; }

std::optional<LimitationKind> parse_limitation_kind(std::string_view name)
{
    for (LimitationKind k : kAllLimitationKinds) {
        if (limitation_name(k) == name) return k;
    }
    return std::nullopt;
}

std::string_view channel_name(Channel c) { return kChannelNames[static_cast<std::size_t>(c)]; }

std::optional<Channel> parse_channel(std::string_view name)
{
    for (std::size_t i = 0; i < kChannelNames.size(); ++i) {
        if (kChannelNames[i] == name) return static_cast<Channel>(i);
    }
    return std::nullopt;
}

Count ControlCounts::sum() const
{
    return std::accumulate(counts.begin(), counts.end(), Count{0});
}

bool LimitationCounts::any() const
{
    return std::any_of(counts.begin(), counts.end(), [](Count n) { return n != 0; });
}

void validate(const Scope& scope)
{
    if (scope.id.empty()) throw InputError("scope id must be non-empty");
}

ScopeQuantities ScopeQuantities::from(const Scope& scope)
{
    ScopeQuantities q;
    q.porosity = {Rational(scope.porosity.visibility), Rational(scope.porosity.access),
                  Rational(scope.porosity.trust)};
    for (std::size_t i = 0; i < kControlClassCount; ++i) q.controls[i] = Rational(scope.controls.counts[i]);
    for (std::size_t i = 0; i < kLimitationKindCount; ++i) {
        q.limitations[i] = Rational(scope.limitations.counts[i]);
    }
    return q;
}

Rational opsec_sum(const PorosityCounts& porosity)
{
    return Rational(porosity.visibility) + Rational(porosity.access) + Rational(porosity.trust);
}

double base_value(const Rational& scale, const Rational& magnitude)
{
    if (scale <= 0) throw DomainError("base value scale must be positive, got " + to_string(scale));
    require_non_negative(magnitude, "base value magnitude");
    if (magnitude == 0) return 0.0;
    const Rational argument = 1 + scale * magnitude;
    const double log_value = std::log(to_double(argument));
    return log_value * log_value;
}

MissingControls missing_controls(const Rational& opsec_sum,
                                 std::span<const Rational, kControlClassCount> controls)
{
    require_non_negative(opsec_sum, "opsec_sum");
    MissingControls mc;
    for (ControlClass c : kAllControlClasses) {
        const std::size_t i = index_of(c);
        mc.per_class[i] = clamp_non_negative(opsec_sum - controls[i]);
        mc.true_controls[i] = std::min(controls[i], opsec_sum);
        mc.sum += mc.per_class[i];
        (meta_class(c) == MetaClass::a ? mc.class_a : mc.class_b) += mc.per_class[i];
    }
    return mc;
}

MissingControls missing_controls(const Rational& opsec_sum, const ControlCounts& controls)
{
    std::array<Rational, kControlClassCount> q;
    for (std::size_t i = 0; i < kControlClassCount; ++i) q[i] = Rational(controls.counts[i]);
    return missing_controls(opsec_sum, q);
}

LimitationWeights limitation_weights(std::span<const Rational, 3> porosity, const Rational& opsec_sum,
                                     const Rational& mc_sum, const Rational& mc_class_a,
                                     const Rational& mc_class_b,
                                     std::span<const Rational, kLimitationKindCount> limitations)
{
    LimitationWeights out;
    if (opsec_sum == 0) {
        const bool any = std::any_of(limitations.begin(), limitations.end(),
                                     [](const Rational& n) { return n != 0; });
        if (any) {
            throw DomainError("limitation weights are undefined for a scope without porosity "
                              "(opsec_sum = 0) that reports limitations");
        }
        return out;
    }

    auto& w = out.weights;
    const auto vulnerability = index_of(LimitationKind::vulnerability);
    const auto weakness = index_of(LimitationKind::weakness);
    const auto concern = index_of(LimitationKind::concern);

    w[vulnerability] = (opsec_sum + mc_sum) / opsec_sum;
    w[weakness] = (opsec_sum + mc_class_a) / opsec_sum;
    w[concern] = (opsec_sum + mc_class_b) / opsec_sum;
    out.mc_vg = mc_sum / (10 * opsec_sum);

    // Exposure and anomaly weights include the weighted values of the first three categories.
    const Rational weighted = limitations[vulnerability] * w[vulnerability] +
                              limitations[weakness] * w[weakness] + limitations[concern] * w[concern];
    w[index_of(LimitationKind::exposure)] = ((porosity[0] + porosity[1]) * out.mc_vg + weighted) / opsec_sum;
    w[index_of(LimitationKind::anomaly)] = (porosity[2] * out.mc_vg + weighted) / opsec_sum;
    for (auto& value : w) value.canonicalize();
    out.mc_vg.canonicalize();
    return out;
}

Rational security_limitations_sum(std::span<const Rational, kLimitationKindCount> limitations,
                                  std::span<const Rational, kLimitationKindCount> weights)
{
    Rational sum;
    for (std::size_t i = 0; i < kLimitationKindCount; ++i) {
        if (limitations[i] == 0) continue;
        sum += limitations[i] * weights[i] * weights[i];
    }
    return sum;
}

double combine_actual_security(double opsec_base, double fc_base, double seclim_base)
{
    return seclim_base * ((opsec_base - fc_base) / 100.0 - 1.0) - (fc_base + 100.0) * opsec_base / 100.0 +
           fc_base + 100.0;
}

RavBreakdown actual_security(const ScopeQuantities& q)
{
    auto require_count = [](const Rational& v, std::string_view what) {
        if (v < 0) throw InputError(std::string(what) + " must be non-negative, got " + to_string(v));
    };
    for (const auto& v : q.porosity) require_count(v, "porosity count");
    for (const auto& v : q.controls) require_count(v, "control count");
    for (const auto& v : q.limitations) require_count(v, "limitation count");

    RavBreakdown b;
    b.opsec_sum = q.porosity[0] + q.porosity[1] + q.porosity[2];
    for (const auto& v : q.controls) b.lc_sum += v;

    const MissingControls mc = missing_controls(b.opsec_sum, q.controls);
    b.mc_per_class = mc.per_class;
    b.tc_per_class = mc.true_controls;
    b.mc_sum = mc.sum;
    b.mc_class_a = mc.class_a;
    b.mc_class_b = mc.class_b;

    const LimitationWeights lw =
        limitation_weights(q.porosity, b.opsec_sum, b.mc_sum, b.mc_class_a, b.mc_class_b, q.limitations);
    b.weights = lw.weights;
    b.mc_vg = lw.mc_vg;
    b.seclim_sum = security_limitations_sum(q.limitations, b.weights);

    b.opsec_base = base_value(100, b.opsec_sum);
    b.fc_base = base_value(10, b.lc_sum);
    b.tc_base = base_value(100, clamp_non_negative(b.opsec_sum - b.mc_sum / 10));
    b.seclim_base = base_value(100, b.seclim_sum);
    b.actsec = combine_actual_security(b.opsec_base, b.fc_base, b.seclim_base);
    return b;
}

RavBreakdown actual_security(const Scope& scope)
{
    validate(scope);
    return actual_security(ScopeQuantities::from(scope));
}

Scope aggregate_scopes(std::span<const Scope> scopes)
{
    if (scopes.empty()) throw InputError("cannot aggregate an empty list of scopes");
    Scope out;
    out.id = "aggregate";
    out.channel = Channel::aggregate;
    out.vector = "aggregate";
    out.index = "aggregate";
    for (const Scope& s : scopes) {
        out.porosity.visibility += s.porosity.visibility;
        out.porosity.access += s.porosity.access;
        out.porosity.trust += s.porosity.trust;
        for (std::size_t i = 0; i < kControlClassCount; ++i) out.controls.counts[i] += s.controls.counts[i];
        for (std::size_t i = 0; i < kLimitationKindCount; ++i) {
            out.limitations.counts[i] += s.limitations.counts[i];
        }
    }
    return out;
}

}  // namespace ravkit
