#pragma once

#include "oracle.hpp"
#include "ravkit/metrics.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace testing_support {

inline ravkit::Scope toy()
{
    ravkit::Scope s;
    s.id = "toy";
    s.porosity = {1, 1, 0};
    s.controls[ravkit::ControlClass::authentication] = 1;
    for (auto k : ravkit::kAllLimitationKinds) s.limitations[k] = 1;
    return s;
}

inline ravkit::Rational q(long long n, long long d = 1)
{
    ravkit::Rational r(static_cast<long>(n), static_cast<long>(d));
    r.canonicalize();
    return r;
}

inline ravkit::Rational from_oracle(const oracle::Q& v) { return q(v.numerator(), v.denominator()); }

inline oracle::Counts counts_of(const ravkit::Scope& s)
{
    oracle::Counts c;
    c.visibility = static_cast<long long>(s.porosity.visibility);
    c.access = static_cast<long long>(s.porosity.access);
    c.trust = static_cast<long long>(s.porosity.trust);
    for (std::size_t i = 0; i < 10; ++i) c.controls[i] = static_cast<long long>(s.controls.counts[i]);
    for (std::size_t i = 0; i < 5; ++i) c.limitations[i] = static_cast<long long>(s.limitations.counts[i]);
    return c;
}

/// Porosity in [0, max_porosity], controls in [0, max_control], limitations in
/// [0, max_limitation]; limitations are cleared when porosity is zero.
template <class Rng>
ravkit::Scope random_scope(Rng& rng, ravkit::Count max_porosity = 6, ravkit::Count max_control = 8,
                           ravkit::Count max_limitation = 4)
{
    auto draw = [&](ravkit::Count hi) { return static_cast<ravkit::Count>(rng() % (hi + 1)); };
    ravkit::Scope s;
    s.id = "random";
    s.porosity = {draw(max_porosity), draw(max_porosity), draw(max_porosity)};
    for (auto& c : s.controls.counts) c = draw(max_control);
    if (s.porosity.visibility + s.porosity.access + s.porosity.trust > 0) {
        for (auto& l : s.limitations.counts) l = draw(max_limitation);
    }
    return s;
}

inline std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream b;
    b << in.rdbuf();
    return b.str();
}

inline std::string fixture(const std::string& name) { return std::string(RAVKIT_FIXTURES) + "/" + name; }

inline bool close_relative(double a, double b, double tol = 1e-9)
{
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace testing_support
