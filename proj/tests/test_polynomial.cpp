#include "helpers.hpp"
#include "ravkit/errors.hpp"
#include "ravkit/symbolic/expression_parser.hpp"
#include "ravkit/symbolic/rational_function.hpp"
#include "ravkit/symbolic/score.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ravkit;
using namespace ravkit::symbolic;
using testing_support::q;

namespace {

Polynomial P(const char* text) { return parse_rational_function(text).numerator(); }
RationalFunction R(const char* text) { return parse_rational_function(text); }

template <class Rng>
Polynomial random_polynomial(Rng& rng, int max_terms = 4)
{
    static const char* vars[] = {"h", "l", "p"};
    Polynomial out;
    const int terms = 1 + static_cast<int>(rng() % max_terms);
    for (int i = 0; i < terms; ++i) {
        Monomial m;
        for (const char* v : vars) {
            const auto e = static_cast<std::uint32_t>(rng() % 3);
            if (e > 0) m = m * Monomial::variable(v, e);
        }
        const long long c = static_cast<long long>(rng() % 11) - 5;
        out += Polynomial::term(q(c == 0 ? 1 : c, 1 + static_cast<long long>(rng() % 3)), m);
    }
    return out;
}

template <class Rng>
RationalFunction random_rational_function(Rng& rng)
{
    Polynomial den = random_polynomial(rng, 3);
    if (den.is_zero()) den = Polynomial(1);
    return RationalFunction(random_polynomial(rng), den);
}

template <class Rng>
Assignment random_point(Rng& rng)
{
    return {{"h", random_rational_at_least_one(rng)},
            {"l", random_rational_at_least_one(rng)},
            {"p", random_rational_at_least_one(rng)}};
}

}  // namespace

TEST(Monomial, MultipliesAndDivides)
{
    const Monomial a = Monomial::variable("h", 2) * Monomial::variable("p");
    const Monomial b = Monomial::variable("h");
    EXPECT_EQ(a.degree(), 3u);
    EXPECT_EQ(a.render(), "h^2*p");
    EXPECT_TRUE(b.divides(a));
    EXPECT_FALSE(a.divides(b));
    EXPECT_EQ(b.quotient_of(a).render(), "h*p");
    EXPECT_EQ(a.gcd(Monomial::variable("p", 3)).render(), "p");
    EXPECT_EQ(a.without("h").render(), "p");
}

TEST(Monomial, GrlexOrdersByDegreeThenAlphabet)
{
    GrlexGreater gt;
    EXPECT_TRUE(gt(Monomial::variable("h", 2), Monomial::variable("p")));
    EXPECT_TRUE(gt(Monomial::variable("h"), Monomial::variable("p")));
    EXPECT_TRUE(gt(Monomial::variable("h") * Monomial::variable("p"), Monomial::variable("l", 1)));
    EXPECT_FALSE(gt(Monomial(), Monomial()));
}

TEST(Polynomial, RendersInGrlexOrder)
{
    EXPECT_EQ(P("(h + p)^2").render(), "h^2 + 2*h*p + p^2");
    EXPECT_EQ(P("3/2*h - l/2 + 1").render(), "3/2*h - 1/2*l + 1");
    EXPECT_EQ(Polynomial().render(), "0");
    EXPECT_EQ(P("-h").render(), "-h");
}

TEST(Polynomial, ExactDivision)
{
    const Polynomial a = P("h^2 - p^2");
    auto qt = a.divide_exact(P("h - p"));
    ASSERT_TRUE(qt.has_value());
    EXPECT_EQ(*qt, P("h + p"));
    EXPECT_FALSE(a.divide_exact(P("h + l")).has_value());
    EXPECT_THROW(a.divide_exact(Polynomial()), DomainError);
}

TEST(Polynomial, GcdFindsCommonFactors)
{
    const Polynomial f = P("(h + p)*(h - l)^2*(3*p + 1)");
    const Polynomial g = P("(h + p)^2*(h - l)*(l + 2)");
    EXPECT_EQ(gcd(f, g), P("(h + p)*(h - l)").monic());
    EXPECT_EQ(gcd(P("6*h^2"), P("4*h*p")), P("h"));
    EXPECT_EQ(gcd(Polynomial(), Polynomial()), Polynomial());
    EXPECT_EQ(gcd(P("2*h + 2"), Polynomial()), P("h + 1"));
    EXPECT_EQ(gcd(P("h + 1"), P("p + 1")), Polynomial(1));
}

TEST(Polynomial, GcdDividesBothOnRandomProducts)
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 60; ++i) {
        const Polynomial common = random_polynomial(rng, 3);
        if (common.is_zero()) continue;
        const Polynomial a = common * random_polynomial(rng, 3);
        const Polynomial b = common * random_polynomial(rng, 3);
        if (a.is_zero() || b.is_zero()) continue;
        const Polynomial g = gcd(a, b);
        EXPECT_TRUE(a.divide_exact(g).has_value());
        EXPECT_TRUE(b.divide_exact(g).has_value());
        EXPECT_TRUE(g.divide_exact(common.monic()).has_value()) << g.render() << " vs " << common.render();
    }
}

TEST(RationalFunction, CanonicalFormCancelsAndNormalizes)
{
    const RationalFunction f = R("(h^2 - p^2)/(2*h - 2*p)");
    EXPECT_EQ(f.render(), "(1/2*h + 1/2*p)");
    const RationalFunction g = R("(11*h - l + 11*p)/(h + p)");
    EXPECT_EQ(g.denominator(), P("h + p"));
    EXPECT_EQ(R("6").render(), "6");
    EXPECT_EQ(R("(2*h)/(4*p)").render(), "(1/2*h)/(p)");
    EXPECT_THROW(R("h") / (R("p") - R("p")), DomainError);
    EXPECT_THROW(RationalFunction(P("h"), Polynomial()), DomainError);
    // The parser reports the same condition against the input text.
    EXPECT_THROW(R("h/(p - p)"), InputError);
}

TEST(RationalFunction, CanonicalFormIsIdempotent)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const RationalFunction f = random_rational_function(rng);
        EXPECT_EQ(f.canonicalized(), f);
        EXPECT_EQ(f.canonicalized().canonicalized(), f.canonicalized());
        EXPECT_EQ(R(f.render().c_str()), f) << f.render();
    }
}

TEST(RationalFunction, FieldAxiomsHoldOnRandomElements)
{
    std::mt19937_64 rng(12);
    for (int i = 0; i < 40; ++i) {
        const RationalFunction a = random_rational_function(rng);
        const RationalFunction b = random_rational_function(rng);
        const RationalFunction c = random_rational_function(rng);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a - a, RationalFunction());
        EXPECT_EQ(a + RationalFunction(), a);
        EXPECT_EQ(a * RationalFunction(1), a);
        if (!a.is_zero()) {
            EXPECT_EQ(a / a, RationalFunction(1));
            EXPECT_EQ((b / a) * a, b);
        }
    }
}

TEST(RationalFunction, EvaluationIsAHomomorphism)
{
    std::mt19937_64 rng(13);
    for (int i = 0; i < 60; ++i) {
        const RationalFunction a = random_rational_function(rng);
        const RationalFunction b = random_rational_function(rng);
        const Assignment x = random_point(rng);
        Rational va;
        Rational vb;
        try {
            va = a.evaluate(x);
            vb = b.evaluate(x);
        } catch (const DomainError&) {
            continue;  // a pole at the sampled point
        }
        EXPECT_EQ((a + b).evaluate(x), va + vb);
        EXPECT_EQ((a * b).evaluate(x), va * vb);
        EXPECT_EQ((a - b).evaluate(x), va - vb);
    }
}

TEST(RationalFunction, UnassignedVariableIsAnInputError)
{
    EXPECT_THROW(R("h + p").evaluate({{"h", 1}}), InputError);
    EXPECT_THROW(R("1/(h - 1)").evaluate({{"h", 1}}), DomainError);
}

TEST(ExpressionParser, HandlesPrecedenceAndPowers)
{
    EXPECT_EQ(R("1 + 2*3^2"), RationalFunction(19));
    EXPECT_EQ(R("-(h)^2"), R("-1*h^2"));
    EXPECT_EQ(R("2.5*h"), R("5/2*h"));
    EXPECT_EQ(R("h/p/l"), R("h/(p*l)"));
    EXPECT_EQ(R("(h+p)^0"), RationalFunction(1));
}

TEST(ExpressionParser, ReportsPositions)
{
    try {
        R("h + * p");
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find('4'), std::string::npos) << e.what();
    }
    for (const char* bad : {"", "(", "h +", "h^p", "h^-1", "3 3", "h)", "1/0", "h^100", "@"}) {
        EXPECT_ANY_THROW(R(bad)) << bad;
    }
}

TEST(ExpressionParser, RejectsDeepNesting)
{
    std::string deep(500, '(');
    deep += "h";
    deep += std::string(500, ')');
    EXPECT_THROW(R(deep.c_str()), InputError);
}

TEST(ExpressionParser, ParsesAssignments)
{
    const Assignment a = parse_assignment("h=2,p=1/2,l=0.75");
    EXPECT_EQ(a.at("h"), 2);
    EXPECT_EQ(a.at("p"), q(1, 2));
    EXPECT_EQ(a.at("l"), q(3, 4));
    EXPECT_THROW(parse_assignment("h"), InputError);
    EXPECT_THROW(parse_assignment("h=1,h=2"), InputError);
    EXPECT_THROW(parse_assignment("1x=2"), InputError);
}
