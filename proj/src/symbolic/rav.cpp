#include "ravkit/symbolic/rav.hpp"

#include "ravkit/errors.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace ravkit::symbolic {

namespace {

bool is_known_kind(const std::string& kind)
{
    return kind == "visibility" || kind == "access" || kind == "trust" || parse_control_class(kind) ||
           parse_limitation_kind(kind);
}

RationalFunction quantity(Count count, const UnitMap& units, const std::string& kind)
{
    RationalFunction value{Rational(count)};
    if (count == 0) return value;
    if (auto it = units.find(kind); it != units.end()) value *= RationalFunction::variable(it->second);
    return value;
}

}  // namespace

UnitMap default_unit_map()
{
    UnitMap units{{"visibility", "h"}, {"access", "p"}, {"trust", "t"}};
    for (ControlClass c : kAllControlClasses) {
        std::string var(control_abbreviation(c));
        std::transform(var.begin(), var.end(), var.begin(),
                       [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
        units.emplace(std::string(control_name(c)), c == ControlClass::authentication ? "l" : var);
    }
    return units;
}

UnitMap full_unit_map()
{
    UnitMap units = default_unit_map();
    const std::array<std::string, kLimitationKindCount> names = {"n_v", "n_w", "n_c", "n_e", "n_a"};
    for (LimitationKind k : kAllLimitationKinds) units.emplace(std::string(limitation_name(k)), names[index_of(k)]);
    return units;
}

void validate_unit_map(const UnitMap& units)
{
    std::set<std::string> seen;
    for (const auto& [kind, var] : units) {
        if (!is_known_kind(kind)) throw InputError("unknown count kind '" + kind + "' in unit map");
        if (!is_valid_variable_name(var)) throw InputError("invalid unit variable '" + var + "'");
        if (!seen.insert(var).second) throw InputError("unit variable '" + var + "' assigned to two kinds");
    }
}

Assignment unit_assignment(const UnitMap& units)
{
    Assignment out;
    for (const auto& [kind, var] : units) out.emplace(var, Rational(1));
    return out;
}

SymbolicScore actual_security_structure(const RationalFunction& opsec_argument,
                                        const RationalFunction& fc_argument,
                                        const RationalFunction& seclim_argument)
{
    const SymbolicScore a = SymbolicScore::log_square(opsec_argument);
    const SymbolicScore f = SymbolicScore::log_square(fc_argument);
    const SymbolicScore s = SymbolicScore::log_square(seclim_argument);
    return s * ((a - f) / 100 - 1) - (f + 100) * a / 100 + f + 100;
}

SymbolicRav symbolic_rav(const Scope& scope, const UnitMap& units)
{
    validate(scope);
    validate_unit_map(units);

    SymbolicRav r;
    const RationalFunction visibility = quantity(scope.porosity.visibility, units, "visibility");
    const RationalFunction access = quantity(scope.porosity.access, units, "access");
    const RationalFunction trust = quantity(scope.porosity.trust, units, "trust");
    r.opsec_sum = visibility + access + trust;

    const Count numeric_opsec = scope.porosity.visibility + scope.porosity.access + scope.porosity.trust;
    for (ControlClass c : kAllControlClasses) {
        const Count count = scope.controls[c];
        const RationalFunction lc = quantity(count, units, std::string(control_name(c)));
        r.lc_sum += lc;
        RationalFunction missing = numeric_opsec > count ? r.opsec_sum - lc : RationalFunction();
        r.mc_sum += missing;
        (meta_class(c) == MetaClass::a ? r.mc_class_a : r.mc_class_b) += missing;
        r.mc_per_class[index_of(c)] = std::move(missing);
    }

    std::array<RationalFunction, kLimitationKindCount> counts;
    for (LimitationKind k : kAllLimitationKinds) {
        counts[index_of(k)] = quantity(scope.limitations[k], units, std::string(limitation_name(k)));
    }

    if (numeric_opsec == 0) {
        if (scope.limitations.any()) {
            throw DomainError("limitation weights are undefined for a scope without porosity "
                              "(opsec_sum = 0) that reports limitations");
        }
    } else {
        const RationalFunction& o = r.opsec_sum;
        auto& w = r.weights;
        const auto v = index_of(LimitationKind::vulnerability);
        const auto wk = index_of(LimitationKind::weakness);
        const auto c = index_of(LimitationKind::concern);
        w[v] = (o + r.mc_sum) / o;
        w[wk] = (o + r.mc_class_a) / o;
        w[c] = (o + r.mc_class_b) / o;
        r.mc_vg = r.mc_sum / (RationalFunction(10) * o);
        const RationalFunction weighted = counts[v] * w[v] + counts[wk] * w[wk] + counts[c] * w[c];
        w[index_of(LimitationKind::exposure)] = ((visibility + access) * r.mc_vg + weighted) / o;
        w[index_of(LimitationKind::anomaly)] = (trust * r.mc_vg + weighted) / o;
        for (std::size_t i = 0; i < kLimitationKindCount; ++i) {
            if (!counts[i].is_zero()) r.seclim_sum += counts[i] * w[i] * w[i];
        }
    }

    r.opsec_argument = RationalFunction(1) + RationalFunction(100) * r.opsec_sum;
    r.fc_argument = RationalFunction(1) + RationalFunction(10) * r.lc_sum;
    r.seclim_argument = RationalFunction(1) + RationalFunction(100) * r.seclim_sum;
    r.actsec = actual_security_structure(r.opsec_argument, r.fc_argument, r.seclim_argument);
    return r;
}

}  // namespace ravkit::symbolic
