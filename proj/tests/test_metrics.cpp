#include "helpers.hpp"
#include "ravkit/errors.hpp"
#include "ravkit/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace ravkit;
using testing_support::from_oracle;
using testing_support::q;

namespace {

void expect_matches_oracle(const Scope& s)
{
    const RavBreakdown b = actual_security(s);
    const oracle::Result o = oracle::rav(testing_support::counts_of(s));
    EXPECT_EQ(b.opsec_sum, from_oracle(o.opsec));
    EXPECT_EQ(b.lc_sum, from_oracle(o.lc_sum));
    for (std::size_t i = 0; i < kControlClassCount; ++i) {
        EXPECT_EQ(b.mc_per_class[i], from_oracle(o.mc[i]));
        EXPECT_EQ(b.tc_per_class[i], from_oracle(o.tc[i]));
    }
    EXPECT_EQ(b.mc_sum, from_oracle(o.mc_sum));
    EXPECT_EQ(b.mc_class_a, from_oracle(o.mc_a));
    EXPECT_EQ(b.mc_class_b, from_oracle(o.mc_b));
    EXPECT_EQ(b.mc_vg, from_oracle(o.mc_vg));
    for (std::size_t k = 0; k < kLimitationKindCount; ++k) EXPECT_EQ(b.weights[k], from_oracle(o.w[k]));
    EXPECT_EQ(b.seclim_sum, from_oracle(o.seclim));
    EXPECT_TRUE(testing_support::close_relative(b.actsec, o.actsec)) << b.actsec << " vs " << o.actsec;
}

}  // namespace

TEST(Metrics, ToyIntermediatesAreExact)
{
    const RavBreakdown b = actual_security(testing_support::toy());
    EXPECT_EQ(b.opsec_sum, 2);
    EXPECT_EQ(b.lc_sum, 1);
    EXPECT_EQ(b.mc_sum, 19);
    EXPECT_EQ(b.mc_class_a, 9);
    EXPECT_EQ(b.mc_class_b, 10);
    EXPECT_EQ(b.mc_vg, q(19, 20));
    EXPECT_EQ(b.weights[0], q(21, 2));
    EXPECT_EQ(b.weights[1], q(11, 2));
    EXPECT_EQ(b.weights[2], 6);
    EXPECT_EQ(b.weights[3], q(239, 20));
    EXPECT_EQ(b.weights[4], 11);
    EXPECT_EQ(b.seclim_sum, q(176121, 400));
    EXPECT_NEAR(b.actsec, -12.744, 0.01);
    EXPECT_EQ(b.mc_per_class[index_of(ControlClass::authentication)], 1);
    EXPECT_EQ(b.tc_per_class[index_of(ControlClass::authentication)], 1);
    EXPECT_EQ(b.mc_per_class[index_of(ControlClass::alarm)], 2);
    EXPECT_EQ(b.tc_per_class[index_of(ControlClass::alarm)], 0);
}

TEST(Metrics, ToyMatchesOracle) { expect_matches_oracle(testing_support::toy()); }

TEST(Metrics, RandomScopesMatchOracle)
{
    std::mt19937_64 rng(20240601);
    for (int i = 0; i < 500; ++i) expect_matches_oracle(testing_support::random_scope(rng));
}

TEST(Metrics, EmptyScopeScoresExactly100)
{
    Scope s;
    s.id = "empty";
    const RavBreakdown b = actual_security(s);
    EXPECT_EQ(b.actsec, 100.0);
    EXPECT_EQ(b.seclim_sum, 0);
    EXPECT_EQ(b.mc_vg, 0);
    for (const auto& w : b.weights) EXPECT_EQ(w, 0);
}

TEST(Metrics, BaseValueOfZeroIsExactlyZero)
{
    EXPECT_EQ(base_value(100, 0), 0.0);
    EXPECT_EQ(base_value(10, 0), 0.0);
    EXPECT_EQ(base_value(q(1, 3), 0), 0.0);
    EXPECT_NEAR(base_value(100, 2), std::pow(std::log(201.0), 2), 1e-12);
    EXPECT_THROW(base_value(100, -1), DomainError);
}

TEST(Metrics, FullyControlledScopeIsNotBalancedAt100)
{
    for (Count o = 1; o <= 5; ++o) {
        Scope s;
        s.id = "full";
        s.porosity = {o, 0, 0};
        for (ControlClass c : kAllControlClasses) s.controls[c] = o;
        const RavBreakdown b = actual_security(s);
        EXPECT_EQ(b.mc_sum, 0);
        EXPECT_NEAR(b.actsec, 100 - b.opsec_base * b.opsec_base / 100, 1e-9);
        EXPECT_LT(b.actsec, 100.0);
    }
}

TEST(Metrics, ZeroPorosityWithLimitationsIsADomainError)
{
    Scope s;
    s.id = "x";
    s.limitations[LimitationKind::concern] = 1;
    EXPECT_THROW(actual_security(s), DomainError);
    s.limitations[LimitationKind::concern] = 0;
    s.controls[ControlClass::privacy] = 3;
    EXPECT_NO_THROW(actual_security(s));
}

TEST(Metrics, NegativeQuantitiesAreRejected)
{
    ScopeQuantities qv = ScopeQuantities::from(testing_support::toy());
    qv.controls[2] = -1;
    EXPECT_THROW(actual_security(qv), InputError);
}

TEST(Metrics, EmptyIdIsRejected)
{
    Scope s = testing_support::toy();
    s.id.clear();
    EXPECT_THROW(actual_security(s), InputError);
}

TEST(Metrics, BreakdownInvariantsHold)
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        const Scope s = testing_support::random_scope(rng);
        const RavBreakdown b = actual_security(s);
        Rational sum;
        for (std::size_t c = 0; c < kControlClassCount; ++c) {
            sum += b.mc_per_class[c];
            EXPECT_GE(b.mc_per_class[c], 0);
            EXPECT_LE(b.mc_per_class[c], b.opsec_sum);
            if (s.controls.counts[c] <= b.opsec_sum) {
                EXPECT_EQ(b.tc_per_class[c] + b.mc_per_class[c], b.opsec_sum);
            }
        }
        EXPECT_EQ(sum, b.mc_sum);
        EXPECT_EQ(b.mc_class_a + b.mc_class_b, b.mc_sum);
        EXPECT_GE(b.seclim_sum, 0);
    }
}

TEST(Metrics, WithinMetaClassPermutationsAreInvariant)
{
    std::mt19937_64 rng(99);
    for (int i = 0; i < 1000; ++i) {
        const Scope s = testing_support::random_scope(rng);
        Scope p = s;
        std::array<std::size_t, 5> a = {0, 1, 2, 3, 4};
        std::array<std::size_t, 5> bi = {5, 6, 7, 8, 9};
        std::shuffle(a.begin(), a.end(), rng);
        std::shuffle(bi.begin(), bi.end(), rng);
        for (std::size_t k = 0; k < 5; ++k) {
            p.controls.counts[k] = s.controls.counts[a[k]];
            p.controls.counts[5 + k] = s.controls.counts[bi[k]];
        }
        const RavBreakdown x = actual_security(s);
        const RavBreakdown y = actual_security(p);
        EXPECT_EQ(x.opsec_sum, y.opsec_sum);
        EXPECT_EQ(x.lc_sum, y.lc_sum);
        EXPECT_EQ(x.mc_sum, y.mc_sum);
        EXPECT_EQ(x.mc_class_a, y.mc_class_a);
        EXPECT_EQ(x.mc_class_b, y.mc_class_b);
        EXPECT_EQ(x.weights, y.weights);
        EXPECT_EQ(x.seclim_sum, y.seclim_sum);
        EXPECT_EQ(x.actsec, y.actsec);
        for (std::size_t k = 0; k < 5; ++k) {
            EXPECT_EQ(y.mc_per_class[k], x.mc_per_class[a[k]]);
            EXPECT_EQ(y.mc_per_class[5 + k], x.mc_per_class[bi[k]]);
        }
    }
}

TEST(Metrics, SwappingWeaknessAndConcernRolesLeavesSecLimUnchangedWhenCountsMatch)
{
    // With equal weakness and concern counts, trading MC_A for MC_B swaps w_W and w_C
    // and leaves the sum of squares unchanged.
    Scope s = testing_support::toy();
    Scope t = s;
    std::swap(t.controls[ControlClass::authentication], t.controls[ControlClass::alarm]);
    EXPECT_EQ(actual_security(s).seclim_sum, actual_security(t).seclim_sum);

    s.limitations[LimitationKind::concern] = 0;
    t.limitations[LimitationKind::concern] = 0;
    EXPECT_NE(actual_security(s).seclim_sum, actual_security(t).seclim_sum);
}

TEST(Metrics, AggregationSumsEveryCount)
{
    Scope a;
    a.id = "internet";
    a.porosity = {50, 10, 0};
    a.controls[ControlClass::authentication] = 20;
    a.limitations[LimitationKind::vulnerability] = 3;
    Scope b;
    b.id = "intranet";
    b.porosity = {100, 40, 25};
    b.controls[ControlClass::authentication] = 5;
    b.controls[ControlClass::alarm] = 9;
    b.limitations[LimitationKind::vulnerability] = 1;
    b.limitations[LimitationKind::anomaly] = 2;
    const std::vector<Scope> both = {a, b};
    const Scope agg = aggregate_scopes(both);
    EXPECT_EQ(agg.porosity.visibility, 150u);
    EXPECT_EQ(agg.porosity.access, 50u);
    EXPECT_EQ(agg.porosity.trust, 25u);
    EXPECT_EQ(agg.controls[ControlClass::authentication], 25u);
    EXPECT_EQ(agg.controls[ControlClass::alarm], 9u);
    EXPECT_EQ(agg.limitations[LimitationKind::vulnerability], 4u);
    EXPECT_EQ(agg.limitations[LimitationKind::anomaly], 2u);
    EXPECT_EQ(agg.channel, Channel::aggregate);
    EXPECT_THROW(aggregate_scopes(std::vector<Scope>{}), InputError);
}

TEST(Metrics, NamesRoundTrip)
{
    for (ControlClass c : kAllControlClasses) {
        EXPECT_EQ(parse_control_class(control_name(c)), c);
        EXPECT_EQ(parse_control_class(control_abbreviation(c)), c);
    }
    for (LimitationKind k : kAllLimitationKinds) EXPECT_EQ(parse_limitation_kind(limitation_name(k)), k);
    EXPECT_EQ(parse_channel("data-network"), Channel::data_network);
    EXPECT_FALSE(parse_channel("carrier-pigeon").has_value());
    EXPECT_EQ(meta_class(ControlClass::continuity), MetaClass::a);
    EXPECT_EQ(meta_class(ControlClass::non_repudiation), MetaClass::b);
}
