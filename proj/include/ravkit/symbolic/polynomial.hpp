#pragma once

#include "ravkit/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ravkit::symbolic {

using Assignment = std::map<std::string, Rational>;

/// True for [A-Za-z_][A-Za-z0-9_]*.
bool is_valid_variable_name(std::string_view name);

/// Power product of named variables. Factors are kept sorted by name with
/// positive exponents only, so equal monomials compare equal.
class Monomial {
public:
    using Factor = std::pair<std::string, std::uint32_t>;

    Monomial() = default;
    static Monomial variable(std::string name, std::uint32_t exponent = 1);

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }
    std::uint32_t degree() const;
    std::uint32_t exponent(std::string_view var) const;

    Monomial operator*(const Monomial& other) const;
    bool divides(const Monomial& other) const;
    /// other / *this; requires divides(other).
    Monomial quotient_of(const Monomial& other) const;
    /// Componentwise minimum of exponents.
    Monomial gcd(const Monomial& other) const;
    /// This monomial with `var` removed.
    Monomial without(std::string_view var) const;

    Rational evaluate(const Assignment& values) const;
    std::string render() const;

    bool operator==(const Monomial&) const = default;

private:
    std::vector<Factor> factors_;
};

/// Graded lexicographic order with variables in alphabetical order:
/// higher total degree first, ties broken by the exponent of the
/// alphabetically first variable.
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial over the rationals. Zero coefficients are never stored.
class Polynomial {
public:
    using Terms = std::map<Monomial, Rational, GrlexGreater>;

    Polynomial() = default;
    Polynomial(const Rational& constant);  // NOLINT(google-explicit-constructor)
    Polynomial(int constant) : Polynomial(Rational(constant)) {}  // NOLINT
    static Polynomial variable(const std::string& name);
    static Polynomial term(const Rational& coefficient, const Monomial& monomial);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Coefficient of the monomial 1 (zero if absent).
    Rational constant_term() const;
    std::size_t size() const { return terms_.size(); }

    /// Largest monomial in grlex order; requires !is_zero().
    const Monomial& leading_monomial() const { return terms_.begin()->first; }
    const Rational& leading_coefficient() const { return terms_.begin()->second; }

    std::set<std::string> variables() const;
    std::uint32_t degree_in(std::string_view var) const;
    /// Coefficients with respect to `var`: exponent -> polynomial free of `var`.
    std::map<std::uint32_t, Polynomial> coefficients_in(const std::string& var) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Polynomial& other);
    Polynomial& operator*=(const Rational& scalar);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

    Polynomial pow(std::uint32_t exponent) const;

    /// Quotient when `divisor` divides *this exactly, std::nullopt otherwise.
    std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;

    /// Scales so the leading coefficient is 1 (zero stays zero).
    Polynomial monic() const;

    Rational evaluate(const Assignment& values) const;

    /// Terms in descending grlex order, e.g. "3*h^2 - l/2 + 1". Zero renders as "0".
    std::string render() const;

private:
    void add_term(const Monomial& m, const Rational& c);

    Terms terms_;
};

/// Monic greatest common divisor over Q; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Pseudo-remainder of a by b with respect to `var`.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, const std::string& var);

}  // namespace ravkit::symbolic
