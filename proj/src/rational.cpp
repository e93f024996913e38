#include "ravkit/rational.hpp"

#include "ravkit/errors.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace ravkit {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

std::string to_string(const Rational& value)
{
    return value.get_str();
}

Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    Rational result;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw InputError("not a rational number: '" + std::string(text) + "'");
        }
        mpz_class d(std::string(den), 10);
        if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
        result = Rational(mpz_class(std::string(num), 10), d);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto whole = body.substr(0, dot);
        auto frac = body.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac))) {
            throw InputError("not a decimal number: '" + std::string(text) + "'");
        }
        mpz_class scale = 1;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
        result = Rational(digits, scale);
    } else {
        if (!all_digits(body)) throw InputError("not a number: '" + std::string(text) + "'");
        result = Rational(mpz_class(std::string(body), 10));
    }
    result.canonicalize();
    return negative ? Rational(-result) : result;
}

double to_double(const Rational& value)
{
    return value.get_d();
}

std::string format_fixed6(double value)
{
    char buffer[400];
    std::snprintf(buffer, sizeof buffer, "%.6f", value);
    std::string out(buffer);
    if (out == "-0.000000") out = "0.000000";
    return out;
}

double round_fixed6(double value)
{
    return std::strtod(format_fixed6(value).c_str(), nullptr);
}

}  // namespace ravkit
