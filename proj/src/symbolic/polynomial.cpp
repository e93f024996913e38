#include "ravkit/symbolic/polynomial.hpp"

#include "ravkit/errors.hpp"

#include <algorithm>
#include <iterator>
#include <cctype>
#include <stdexcept>

namespace ravkit::symbolic {

bool is_valid_variable_name(std::string_view name)
{
    if (name.empty()) return false;
    auto first = static_cast<unsigned char>(name.front());
    if (!std::isalpha(first) && first != '_') return false;
    return std::all_of(name.begin(), name.end(), [](char ch) {
        auto c = static_cast<unsigned char>(ch);
        return std::isalnum(c) || c == '_';
    });
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(std::string name, std::uint32_t exponent)
{
    Monomial m;
    if (exponent > 0) m.factors_.emplace_back(std::move(name), exponent);
    return m;
}

std::uint32_t Monomial::degree() const
{
    std::uint32_t d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
}

std::uint32_t Monomial::exponent(std::string_view var) const
{
    for (const auto& [name, e] : factors_) {
        if (name == var) return e;
    }
    return 0;
}

Monomial Monomial::operator*(const Monomial& other) const
{
    Monomial out;
    out.factors_.reserve(factors_.size() + other.factors_.size());
    auto i = factors_.begin();
    auto j = other.factors_.begin();
    while (i != factors_.end() || j != other.factors_.end()) {
        if (j == other.factors_.end() || (i != factors_.end() && i->first < j->first)) {
            out.factors_.push_back(*i++);
        } else if (i == factors_.end() || j->first < i->first) {
            out.factors_.push_back(*j++);
        } else {
            out.factors_.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    return out;
}

bool Monomial::divides(const Monomial& other) const
{
    for (const auto& [name, e] : factors_) {
        if (other.exponent(name) < e) return false;
    }
    return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const
{
    Monomial out;
    for (const auto& [name, e] : other.factors_) {
        const std::uint32_t mine = exponent(name);
        if (mine > e) throw std::logic_error("monomial does not divide");
        if (e > mine) out.factors_.emplace_back(name, e - mine);
    }
    return out;
}

Monomial Monomial::gcd(const Monomial& other) const
{
    Monomial out;
    for (const auto& [name, e] : factors_) {
        const std::uint32_t m = std::min(e, other.exponent(name));
        if (m > 0) out.factors_.emplace_back(name, m);
    }
    return out;
}

Monomial Monomial::without(std::string_view var) const
{
    Monomial out;
    for (const auto& f : factors_) {
        if (f.first != var) out.factors_.push_back(f);
    }
    return out;
}

Rational Monomial::evaluate(const Assignment& values) const
{
    Rational out = 1;
    for (const auto& [name, e] : factors_) {
        auto it = values.find(name);
        if (it == values.end()) throw InputError("unassigned variable '" + name + "'");
        for (std::uint32_t k = 0; k < e; ++k) out *= it->second;
    }
    return out;
}

std::string Monomial::render() const
{
    std::string out;
    for (const auto& [name, e] : factors_) {
        if (!out.empty()) out += '*';
        out += name;
        if (e > 1) out += '^' + std::to_string(e);
    }
    return out.empty() ? "1" : out;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const
{
    const auto da = a.degree();
    const auto db = b.degree();
    if (da != db) return da > db;
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < fa.size() || j < fb.size()) {
        if (j == fb.size() || (i < fa.size() && fa[i].first < fb[j].first)) return true;
        if (i == fa.size() || fb[j].first < fa[i].first) return false;
        if (fa[i].second != fb[j].second) return fa[i].second > fb[j].second;
        ++i;
        ++j;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(const Rational& constant)
{
    if (constant != 0) terms_.emplace(Monomial{}, constant);
}

Polynomial Polynomial::variable(const std::string& name)
{
    if (!is_valid_variable_name(name)) throw InputError("invalid variable name '" + name + "'");
    return term(1, Monomial::variable(name));
}

Polynomial Polynomial::term(const Rational& coefficient, const Monomial& monomial)
{
    Polynomial p;
    if (coefficient != 0) p.terms_.emplace(monomial, coefficient);
    return p;
}

bool Polynomial::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_term() const
{
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

std::set<std::string> Polynomial::variables() const
{
    std::set<std::string> out;
    for (const auto& [m, c] : terms_) {
        for (const auto& f : m.factors()) out.insert(f.first);
    }
    return out;
}

std::uint32_t Polynomial::degree_in(std::string_view var) const
{
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(var));
    return d;
}

std::map<std::uint32_t, Polynomial> Polynomial::coefficients_in(const std::string& var) const
{
    std::map<std::uint32_t, Polynomial> out;
    for (const auto& [m, c] : terms_) out[m.exponent(var)].add_term(m.without(var), c);
    return out;
}

void Polynomial::add_term(const Monomial& m, const Rational& c)
{
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Polynomial Polynomial::operator-() const
{
    Polynomial out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other)
{
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other)
{
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other)
{
    Polynomial out;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : other.terms_) out.add_term(ma * mb, ca * cb);
    }
    *this = std::move(out);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar)
{
    if (scalar == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= scalar;
    return *this;
}

Polynomial Polynomial::pow(std::uint32_t exponent) const
{
    Polynomial result = 1;
    Polynomial base = *this;
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent > 0) base *= base;
    }
    return result;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const
{
    if (divisor.is_zero()) throw DomainError("division by the zero polynomial");
    Polynomial quotient;
    Polynomial remainder = *this;
    const Monomial& lead = divisor.leading_monomial();
    const Rational& lead_coeff = divisor.leading_coefficient();
    while (!remainder.is_zero()) {
        const Monomial& rm = remainder.leading_monomial();
        if (!lead.divides(rm)) return std::nullopt;
        const Polynomial step = term(remainder.leading_coefficient() / lead_coeff, lead.quotient_of(rm));
        quotient += step;
        remainder -= step * divisor;
    }
    return quotient;
}

Polynomial Polynomial::monic() const
{
    if (is_zero()) return *this;
    Polynomial out = *this;
    out *= Rational(1 / leading_coefficient());
    return out;
}

Rational Polynomial::evaluate(const Assignment& values) const
{
    Rational out;
    for (const auto& [m, c] : terms_) out += c * m.evaluate(values);
    return out;
}

std::string Polynomial::render() const
{
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool negative = c < 0;
        const Rational magnitude = abs(c);
        if (first) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        if (m.is_one()) {
            out += to_string(magnitude);
        } else if (magnitude == 1) {
            out += m.render();
        } else {
            out += to_string(magnitude) + '*' + m.render();
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// GCD via recursive primitive remainder sequences.

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, const std::string& var)
{
    const std::uint32_t db = b.degree_in(var);
    const Polynomial lcb = b.coefficients_in(var).at(db);
    Polynomial r = a;
    while (!r.is_zero()) {
        const std::uint32_t dr = r.degree_in(var);
        if (dr < db) break;
        const Polynomial lcr = r.coefficients_in(var).at(dr);
        r = lcb * r - lcr * Polynomial::term(1, Monomial::variable(var, dr - db)) * b;
    }
    return r;
}

namespace {

Polynomial exact_quotient(const Polynomial& a, const Polynomial& b)
{
    auto q = a.divide_exact(b);
    if (!q) throw std::logic_error("expected exact polynomial division");
    return std::move(*q);
}

Polynomial content_in(const Polynomial& p, const std::string& var)
{
    Polynomial g;
    for (const auto& [e, coeff] : p.coefficients_in(var)) {
        g = gcd(g, coeff);
        if (g.is_constant()) return 1;
    }
    return g;
}

Polynomial primitive_part_in(const Polynomial& p, const std::string& var)
{
    return exact_quotient(p, content_in(p, var));
}

Monomial monomial_content(const Polynomial& p)
{
    auto it = p.terms().begin();
    Monomial g = it->first;
    for (++it; it != p.terms().end() && !g.is_one(); ++it) g = g.gcd(it->first);
    return g;
}

// Dense univariate polynomials over Q, lowest degree first, no trailing zeros.
using Dense = std::vector<Rational>;

void trim(Dense& p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
}

std::size_t dense_gcd_degree(Dense a, Dense b)
{
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        // a <- a mod b
        while (a.size() >= b.size()) {
            const Rational factor = a.back() / b.back();
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a.empty() ? 0 : a.size() - 1;
}

// The univariate image of p in `var` with every other variable replaced by its value in `at`.
Dense image_in(const Polynomial& p, const std::string& var, const Assignment& at)
{
    Dense out(p.degree_in(var) + 1);
    for (const auto& [m, c] : p.terms()) {
        Rational v = c;
        for (const auto& [name, e] : m.factors()) {
            if (name == var) continue;
            const Rational& x = at.at(name);
            for (std::uint32_t i = 0; i < e; ++i) v *= x;
        }
        out[m.exponent(var)] += v;
    }
    trim(out);
    return out;
}

// Upper bound on the degree of gcd(a, b) in `var`, read off one univariate image.
// The bound is exact for the true gcd whenever both leading coefficients in `var`
// survive the substitution, because the image of the gcd then keeps its degree.
std::optional<std::uint32_t> gcd_degree_bound(const Polynomial& a, const Polynomial& b, const std::string& var,
                                              const std::set<std::string>& others)
{
    static constexpr long kPoints[] = {3, 7, 13, 29, 53, 97, 181, 331};
    for (std::size_t attempt = 0; attempt < 4; ++attempt) {
        Assignment at;
        std::size_t k = attempt;
        for (const auto& v : others) at[v] = Rational(kPoints[k++ % std::size(kPoints)] + static_cast<long>(attempt));
        const Dense ia = image_in(a, var, at);
        const Dense ib = image_in(b, var, at);
        if (ia.size() != a.degree_in(var) + 1 || ib.size() != b.degree_in(var) + 1) continue;
        return static_cast<std::uint32_t>(dense_gcd_degree(ia, ib));
    }
    return std::nullopt;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return 1;
    // Divisors of a monomial are monomials, and a monomial divides b iff it divides every term.
    if (a.size() == 1) return Polynomial::term(1, a.leading_monomial().gcd(monomial_content(b)));
    if (b.size() == 1) return gcd(b, a);
    if (a.monic() == b.monic()) return a.monic();
    if (b.size() <= a.size() && a.divide_exact(b)) return b.monic();
    if (a.size() < b.size() && b.divide_exact(a)) return a.monic();

    const auto va = a.variables();
    const auto vb = b.variables();
    std::string var;
    for (const auto& v : va) {
        if (vb.count(v) != 0) {
            var = v;
            break;
        }
    }
    if (var.empty()) {
        // No shared variable: any common factor lies in the content of each.
        const std::string& x = *va.begin();
        return gcd(content_in(a, x), b);
    }
    for (const auto& v : va) {
        if (vb.count(v) == 0) return gcd(content_in(a, v), b);
    }
    for (const auto& v : vb) {
        if (va.count(v) == 0) return gcd(a, content_in(b, v));
    }

    // A variable in which the gcd provably has degree zero can be stripped by
    // taking contents, which keeps the remainder sequences below small.
    std::set<std::string> vars = va;
    vars.insert(vb.begin(), vb.end());
    for (const auto& v : vars) {
        std::set<std::string> others = vars;
        others.erase(v);
        const auto bound = gcd_degree_bound(a, b, v, others);
        if (!bound || *bound > 0) continue;
        if (vars.size() == 1) return 1;
        return gcd(content_in(a, v), content_in(b, v));
    }

    const Polynomial ca = content_in(a, var);
    const Polynomial cb = content_in(b, var);
    const Polynomial g = gcd(ca, cb);
    Polynomial pa = exact_quotient(a, ca);
    Polynomial pb = exact_quotient(b, cb);
    if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);

    while (true) {
        if (pb.degree_in(var) == 0) return g.monic();
        Polynomial r = pseudo_remainder(pa, pb, var);
        if (r.is_zero()) return (pb * g).monic();
        pa = std::move(pb);
        pb = primitive_part_in(r, var);
    }
}

}  // namespace ravkit::symbolic
