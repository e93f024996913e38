#include "ravkit/symbolic/rational_function.hpp"

#include "ravkit/errors.hpp"

namespace ravkit::symbolic {

namespace {

Polynomial quotient(const Polynomial& a, const Polynomial& b)
{
    auto q = a.divide_exact(b);
    if (!q) throw std::logic_error("gcd does not divide its argument");
    return std::move(*q);
}

}  // namespace

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator))
{
    if (denominator_.is_zero()) throw DomainError("rational function with zero denominator");
    canonicalize();
}

RationalFunction RationalFunction::variable(const std::string& name)
{
    return RationalFunction(Polynomial::variable(name));
}

void RationalFunction::canonicalize()
{
    if (numerator_.is_zero()) {
        denominator_ = 1;
        return;
    }
    if (!denominator_.is_constant()) {
        const Polynomial g = gcd(numerator_, denominator_);
        if (!g.is_constant()) {
            numerator_ = quotient(numerator_, g);
            denominator_ = quotient(denominator_, g);
        }
    }
    const Rational lead = denominator_.leading_coefficient();
    if (lead != 1) {
        const Rational scale = 1 / lead;
        numerator_ *= scale;
        denominator_ *= scale;
    }
}

std::set<std::string> RationalFunction::variables() const
{
    auto vars = numerator_.variables();
    vars.merge(denominator_.variables());
    return vars;
}

RationalFunction RationalFunction::operator-() const
{
    return RationalFunction(-numerator_, denominator_, Raw{});
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& other)
{
    // Both operands are reduced, so a common factor of the sum's numerator and
    // denominator can only come from the shared part g of the denominators.
    const Polynomial g = gcd(denominator_, other.denominator_);
    const Polynomial mine = quotient(other.denominator_, g);
    const Polynomial theirs = quotient(denominator_, g);
    Polynomial t = numerator_ * mine + other.numerator_ * theirs;
    if (t.is_zero()) {
        *this = RationalFunction();
        return *this;
    }
    Polynomial rest = g;
    if (!g.is_constant()) {
        const Polynomial h = gcd(t, g);
        if (!h.is_constant()) {
            t = quotient(t, h);
            rest = quotient(g, h);
        }
    }
    numerator_ = std::move(t);
    denominator_ = theirs * mine * rest;
    const Rational lead = denominator_.leading_coefficient();
    if (lead != 1) {
        const Rational scale = 1 / lead;
        numerator_ *= scale;
        denominator_ *= scale;
    }
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& other)
{
    return *this += -other;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& other)
{
    if (is_zero() || other.is_zero()) {
        *this = RationalFunction();
        return *this;
    }
    // Inputs are reduced, so cancelling across the product is enough.
    const Polynomial g1 = gcd(numerator_, other.denominator_);
    const Polynomial g2 = gcd(other.numerator_, denominator_);
    numerator_ = quotient(numerator_, g1) * quotient(other.numerator_, g2);
    denominator_ = quotient(denominator_, g2) * quotient(other.denominator_, g1);
    const Rational lead = denominator_.leading_coefficient();
    if (lead != 1) {
        const Rational scale = 1 / lead;
        numerator_ *= scale;
        denominator_ *= scale;
    }
    return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& other)
{
    if (other.is_zero()) throw DomainError("division by the zero rational function");
    return *this *= RationalFunction(other.denominator_, other.numerator_);
}

RationalFunction RationalFunction::pow(std::uint32_t exponent) const
{
    // Powers of coprime polynomials stay coprime.
    return RationalFunction(numerator_.pow(exponent), denominator_.pow(exponent), Raw{});
}

Rational RationalFunction::evaluate(const Assignment& values) const
{
    const Rational den = denominator_.evaluate(values);
    if (den == 0) throw DomainError("denominator vanishes at the given assignment");
    return numerator_.evaluate(values) / den;
}

std::string RationalFunction::render() const
{
    if (is_constant()) return to_string(numerator_.constant_term());
    std::string out = "(" + numerator_.render() + ")";
    if (!denominator_.is_constant()) out += "/(" + denominator_.render() + ")";
    return out;
}

}  // namespace ravkit::symbolic
