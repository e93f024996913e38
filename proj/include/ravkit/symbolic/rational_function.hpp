#pragma once

#include "ravkit/symbolic/polynomial.hpp"

namespace ravkit::symbolic {

/// Quotient of polynomials kept in canonical form: numerator and denominator
/// share no common factor and the denominator is monic in grlex order.
/// Two rational functions are equal as functions iff their canonical forms
/// compare equal.
class RationalFunction {
public:
    RationalFunction() : denominator_(1) {}
    RationalFunction(const Rational& constant) : numerator_(constant), denominator_(1) {}  // NOLINT
    RationalFunction(int constant) : RationalFunction(Rational(constant)) {}                // NOLINT
    RationalFunction(const Polynomial& polynomial) : numerator_(polynomial), denominator_(1) {}  // NOLINT
    /// Throws DomainError if the denominator is zero.
    RationalFunction(Polynomial numerator, Polynomial denominator);

    static RationalFunction variable(const std::string& name);

    const Polynomial& numerator() const { return numerator_; }
    const Polynomial& denominator() const { return denominator_; }
    bool is_zero() const { return numerator_.is_zero(); }
    bool is_constant() const { return numerator_.is_constant() && denominator_.is_constant(); }
    std::set<std::string> variables() const;

    RationalFunction operator-() const;
    RationalFunction& operator+=(const RationalFunction& other);
    RationalFunction& operator-=(const RationalFunction& other);
    RationalFunction& operator*=(const RationalFunction& other);
    /// Throws DomainError when `other` is zero.
    RationalFunction& operator/=(const RationalFunction& other);

    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b)
    {
        return a.numerator_ == b.numerator_ && a.denominator_ == b.denominator_;
    }

    RationalFunction pow(std::uint32_t exponent) const;

    /// Exact value at `values`. Throws InputError for unassigned variables and
    /// DomainError when the denominator vanishes.
    Rational evaluate(const Assignment& values) const;

    /// "(num)" or "(num)/(den)"; constants render without parentheses.
    std::string render() const;

    /// Re-runs reduction; a no-op on values built through this interface.
    RationalFunction canonicalized() const { return {numerator_, denominator_}; }

private:
    struct Raw {};
    RationalFunction(Polynomial numerator, Polynomial denominator, Raw)
        : numerator_(std::move(numerator)), denominator_(std::move(denominator))
    {
    }
    void canonicalize();

    Polynomial numerator_;
    Polynomial denominator_;
};

}  // namespace ravkit::symbolic
