#pragma once

#include "ravkit/symbolic/rational_function.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ravkit::symbolic {

/// ln(argument)^power with power 1 or 2.
struct LogAtom {
    RationalFunction argument;
    std::uint32_t power = 2;

    /// Canonical text, also the ordering key: "log(<argument>)^2" or "log(<argument>)".
    std::string render() const;
};

/// Rational-coefficient combination of products of log atoms:
///   sum_i c_i * prod_j ln(arg_ij)^k_ij
///
/// Terms are keyed by their sorted atom multiset, so two scores built from the
/// same pieces compare equal. Atoms whose argument is the constant 1 vanish.
class SymbolicScore {
public:
    struct Term {
        Rational coefficient;
        std::vector<LogAtom> atoms;  // sorted by render()
    };

    SymbolicScore() = default;
    SymbolicScore(const Rational& constant);  // NOLINT(google-explicit-constructor)
    SymbolicScore(int constant) : SymbolicScore(Rational(constant)) {}  // NOLINT

    static SymbolicScore log_square(const RationalFunction& argument);
    static SymbolicScore log(const RationalFunction& argument);

    std::vector<Term> terms() const;
    std::size_t term_count() const { return terms_.size(); }
    bool is_constant() const;
    std::set<std::string> variables() const;
    /// Distinct atoms in key order.
    std::vector<LogAtom> atoms() const;

    SymbolicScore operator-() const;
    SymbolicScore& operator+=(const SymbolicScore& other);
    SymbolicScore& operator-=(const SymbolicScore& other);
    SymbolicScore& operator*=(const SymbolicScore& other);
    SymbolicScore& operator*=(const Rational& scalar);
    SymbolicScore& operator/=(const Rational& scalar);

    friend SymbolicScore operator+(SymbolicScore a, const SymbolicScore& b) { return a += b; }
    friend SymbolicScore operator-(SymbolicScore a, const SymbolicScore& b) { return a -= b; }
    friend SymbolicScore operator*(SymbolicScore a, const SymbolicScore& b) { return a *= b; }
    friend SymbolicScore operator/(SymbolicScore a, const Rational& b) { return a /= b; }
    friend bool operator==(const SymbolicScore& a, const SymbolicScore& b);

    /// Terms in key order, constant term last:
    ///   score := term ((" + " | " - ") term)*
    ///   term  := coefficient | [coefficient "*"] atom ("*" atom)*
    ///   atom  := "log(" rational-function ")" ["^2"]
    std::string render() const;

private:
    struct Entry {
        Rational coefficient;
        std::vector<LogAtom> atoms;
    };
    using Key = std::vector<std::string>;

    void add(const Key& key, const Rational& coefficient, const std::vector<LogAtom>& atoms);

    std::map<Key, Entry> terms_;
};

/// Substitutes exactly, then applies the natural log in double precision.
/// Throws InputError for an unassigned variable and DomainError when an atom
/// argument evaluates below 1.
double evaluate(const SymbolicScore& score, const Assignment& values);

struct EquivalenceResult {
    bool equivalent = false;
    /// Canonical forms matched; no sampling was needed.
    bool structural = false;
    std::size_t points_checked = 0;
    std::optional<Assignment> witness;
    double lhs = 0.0;
    double rhs = 0.0;
};

inline constexpr double kEquivalenceTolerance = 1e-9;

/// Structural comparison first, then `trials` seeded random points with every
/// variable drawn as a rational >= 1. Values agree when
/// |a - b| <= 1e-9 * max(1, |a|, |b|).
EquivalenceResult equivalent(const SymbolicScore& a, const SymbolicScore& b, std::size_t trials,
                             std::uint64_t seed);

/// Deterministic rational >= 1 drawn from `rng` (numerator in [q, 8q], q in [1, 16]).
template <class Engine>
Rational random_rational_at_least_one(Engine& rng)
{
    const auto q = static_cast<unsigned long>(rng() % 16 + 1);
    const auto p = static_cast<unsigned long>(q + rng() % (7 * q + 1));
    Rational value(p, q);
    value.canonicalize();
    return value;
}

}  // namespace ravkit::symbolic
