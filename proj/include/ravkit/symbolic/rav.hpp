#pragma once

#include "ravkit/metrics.hpp"
#include "ravkit/symbolic/score.hpp"

#include <array>
#include <map>
#include <string>

namespace ravkit::symbolic {

/// Maps a count kind ("visibility", "access", "trust", a control class name or
/// a limitation name) to the formal variable its count is measured in. Kinds
/// without an entry enter the derivation as plain numbers.
using UnitMap = std::map<std::string, std::string>;

/// h, p, t for porosity; l for authentication; the lower-case abbreviation for
/// every other control class. Limitation counts stay numeric.
UnitMap default_unit_map();

/// default_unit_map() plus n_v, n_w, n_c, n_e, n_a for the limitation categories.
UnitMap full_unit_map();

/// Throws InputError for unknown kinds, invalid names or a variable used twice.
void validate_unit_map(const UnitMap& units);

/// All variables of `units` set to 1.
Assignment unit_assignment(const UnitMap& units);

struct SymbolicRav {
    RationalFunction opsec_sum;
    RationalFunction lc_sum;
    std::array<RationalFunction, kControlClassCount> mc_per_class;
    RationalFunction mc_sum;
    RationalFunction mc_class_a;
    RationalFunction mc_class_b;
    RationalFunction mc_vg;
    std::array<RationalFunction, kLimitationKindCount> weights;
    RationalFunction seclim_sum;
    /// Arguments of the three log-square atoms: 1 + 100*opsec, 1 + 10*lc, 1 + 100*seclim.
    RationalFunction opsec_argument;
    RationalFunction fc_argument;
    RationalFunction seclim_argument;
    SymbolicScore actsec;
};

/// The rav pipeline carried out over formal units.
///
/// Each max(opsec - LC, 0) branch is resolved with every unit equal to 1, so the
/// result agrees with actual_security() at the unit assignment and at any
/// assignment that preserves those branch decisions. Throws DomainError for a
/// zero-porosity scope that reports limitations.
SymbolicRav symbolic_rav(const Scope& scope, const UnitMap& units = default_unit_map());

/// S*((A - F)/100 - 1) - (F + 100)*A/100 + F + 100 over log-square atoms.
SymbolicScore actual_security_structure(const RationalFunction& opsec_argument,
                                        const RationalFunction& fc_argument,
                                        const RationalFunction& seclim_argument);

}  // namespace ravkit::symbolic
