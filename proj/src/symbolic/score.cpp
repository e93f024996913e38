#include "ravkit/symbolic/score.hpp"

#include "ravkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ravkit::symbolic {

std::string LogAtom::render() const
{
    const bool polynomial = argument.denominator().is_constant();
    std::string out = "log(" + (polynomial ? argument.numerator().render() : argument.render()) + ")";
    if (power == 2) out += "^2";
    return out;
}

SymbolicScore::SymbolicScore(const Rational& constant)
{
    if (constant != 0) terms_.emplace(Key{}, Entry{constant, {}});
}

SymbolicScore SymbolicScore::log_square(const RationalFunction& argument)
{
    SymbolicScore s;
    if (argument == RationalFunction(1)) return s;
    LogAtom atom{argument, 2};
    s.terms_.emplace(Key{atom.render()}, Entry{1, {atom}});
    return s;
}

SymbolicScore SymbolicScore::log(const RationalFunction& argument)
{
    SymbolicScore s;
    if (argument == RationalFunction(1)) return s;
    LogAtom atom{argument, 1};
    s.terms_.emplace(Key{atom.render()}, Entry{1, {atom}});
    return s;
}

std::vector<SymbolicScore::Term> SymbolicScore::terms() const
{
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [key, entry] : terms_) out.push_back({entry.coefficient, entry.atoms});
    return out;
}

bool SymbolicScore::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

std::set<std::string> SymbolicScore::variables() const
{
    std::set<std::string> out;
    for (const auto& [key, entry] : terms_) {
        for (const auto& atom : entry.atoms) out.merge(atom.argument.variables());
    }
    return out;
}

std::vector<LogAtom> SymbolicScore::atoms() const
{
    std::map<std::string, LogAtom> unique;
    for (const auto& [key, entry] : terms_) {
        for (const auto& atom : entry.atoms) unique.emplace(atom.render(), atom);
    }
    std::vector<LogAtom> out;
    for (auto& [k, atom] : unique) out.push_back(atom);
    return out;
}

void SymbolicScore::add(const Key& key, const Rational& coefficient, const std::vector<LogAtom>& atoms)
{
    if (coefficient == 0) return;
    auto [it, inserted] = terms_.try_emplace(key, Entry{coefficient, atoms});
    if (inserted) return;
    it->second.coefficient += coefficient;
    if (it->second.coefficient == 0) terms_.erase(it);
}

SymbolicScore SymbolicScore::operator-() const
{
    SymbolicScore out = *this;
    for (auto& [key, entry] : out.terms_) entry.coefficient = -entry.coefficient;
    return out;
}

SymbolicScore& SymbolicScore::operator+=(const SymbolicScore& other)
{
    for (const auto& [key, entry] : other.terms_) add(key, entry.coefficient, entry.atoms);
    return *this;
}

SymbolicScore& SymbolicScore::operator-=(const SymbolicScore& other)
{
    for (const auto& [key, entry] : other.terms_) add(key, -entry.coefficient, entry.atoms);
    return *this;
}

SymbolicScore& SymbolicScore::operator*=(const SymbolicScore& other)
{
    SymbolicScore out;
    for (const auto& [ka, ea] : terms_) {
        for (const auto& [kb, eb] : other.terms_) {
            std::vector<std::pair<std::string, LogAtom>> merged;
            for (const auto& atom : ea.atoms) merged.emplace_back(atom.render(), atom);
            for (const auto& atom : eb.atoms) merged.emplace_back(atom.render(), atom);
            std::stable_sort(merged.begin(), merged.end(),
                             [](const auto& x, const auto& y) { return x.first < y.first; });
            Key key;
            std::vector<LogAtom> atoms;
            for (auto& [k, atom] : merged) {
                key.push_back(k);
                atoms.push_back(atom);
            }
            out.add(key, ea.coefficient * eb.coefficient, atoms);
        }
    }
    *this = std::move(out);
    return *this;
}

SymbolicScore& SymbolicScore::operator*=(const Rational& scalar)
{
    if (scalar == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, entry] : terms_) entry.coefficient *= scalar;
    return *this;
}

SymbolicScore& SymbolicScore::operator/=(const Rational& scalar)
{
    if (scalar == 0) throw DomainError("division of a symbolic score by zero");
    return *this *= Rational(1 / scalar);
}

bool operator==(const SymbolicScore& a, const SymbolicScore& b)
{
    if (a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    for (; i != a.terms_.end(); ++i, ++j) {
        if (i->first != j->first || i->second.coefficient != j->second.coefficient) return false;
    }
    return true;
}

std::string SymbolicScore::render() const
{
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const Key, Entry>*> ordered;
    for (const auto& item : terms_) {
        if (!item.first.empty()) ordered.push_back(&item);
    }
    if (auto it = terms_.find(Key{}); it != terms_.end()) ordered.push_back(&*it);

    std::string out;
    bool first = true;
    for (const auto* item : ordered) {
        const Rational& c = item->second.coefficient;
        const Rational magnitude = abs(c);
        if (first) {
            if (c < 0) out += '-';
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        std::string body;
        if (item->first.empty() || magnitude != 1) body = to_string(magnitude);
        for (const auto& key : item->first) {
            if (!body.empty()) body += '*';
            body += key;
        }
        out += body;
    }
    return out;
}

double evaluate(const SymbolicScore& score, const Assignment& values)
{
    std::map<std::string, double> logs;
    double total = 0.0;
    for (const auto& term : score.terms()) {
        double product = to_double(term.coefficient);
        for (const auto& atom : term.atoms) {
            const std::string key = atom.argument.render();
            auto it = logs.find(key);
            if (it == logs.end()) {
                const Rational arg = atom.argument.evaluate(values);
                if (arg < 1) {
                    throw DomainError("log argument " + key + " evaluates to " + to_string(arg) +
                                      ", below 1");
                }
                it = logs.emplace(key, std::log(to_double(arg))).first;
            }
            product *= atom.power == 2 ? it->second * it->second : it->second;
        }
        total += product;
    }
    return total;
}

namespace {

bool close(double x, double y)
{
    const double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
    return std::fabs(x - y) <= kEquivalenceTolerance * scale;
}

}  // namespace

EquivalenceResult equivalent(const SymbolicScore& a, const SymbolicScore& b, std::size_t trials,
                             std::uint64_t seed)
{
    EquivalenceResult result;
    if (a == b) {
        result.equivalent = true;
        result.structural = true;
        return result;
    }

    std::set<std::string> vars = a.variables();
    vars.merge(b.variables());
    std::mt19937_64 rng(seed);
    const std::size_t max_attempts = std::max<std::size_t>(trials, 1) * 4;
    for (std::size_t attempt = 0; attempt < max_attempts && result.points_checked < trials; ++attempt) {
        Assignment point;
        for (const auto& v : vars) point.emplace(v, random_rational_at_least_one(rng));

        std::optional<double> va;
        std::optional<double> vb;
        try {
            va = evaluate(a, point);
        } catch (const DomainError&) {
        }
        try {
            vb = evaluate(b, point);
        } catch (const DomainError&) {
        }
        if (!va && !vb) continue;
        ++result.points_checked;
        if (!va || !vb || !close(*va, *vb)) {
            result.witness = point;
            result.lhs = va.value_or(std::nan(""));
            result.rhs = vb.value_or(std::nan(""));
            return result;
        }
    }
    result.equivalent = result.points_checked > 0;
    return result;
}

}  // namespace ravkit::symbolic
