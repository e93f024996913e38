#include "ravkit/symbolic/expression_parser.hpp"

#include "ravkit/errors.hpp"

#include <cctype>
#include <string>

namespace ravkit::symbolic {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    RationalFunction parse()
    {
        RationalFunction value = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character");
        return value;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw InputError(what + " at offset " + std::to_string(pos_) + " in expression");
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RationalFunction expr()
    {
        RationalFunction value = term();
        while (true) {
            if (accept('+')) {
                value += term();
            } else if (accept('-')) {
                value -= term();
            } else {
                return value;
            }
        }
    }

    RationalFunction term()
    {
        RationalFunction value = unary();
        while (true) {
            if (accept('*')) {
                value *= unary();
            } else if (accept('/')) {
                RationalFunction divisor = unary();
                if (divisor.is_zero()) fail("division by zero");
                value /= divisor;
            } else {
                return value;
            }
        }
    }

    RationalFunction unary()
    {
        if (++depth_ > kMaxDepth) fail("expression nested too deeply");
        RationalFunction value = accept('-') ? -unary() : power();
        --depth_;
        return value;
    }

    RationalFunction power()
    {
        RationalFunction base = primary();
        if (!accept('^')) return base;
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer exponent");
        const auto digits = text_.substr(start, pos_ - start);
        if (digits.size() > 3 || std::stoul(std::string(digits)) > kMaxExponent) fail("exponent too large");
        return base.pow(static_cast<std::uint32_t>(std::stoul(std::string(digits))));
    }

    RationalFunction primary()
    {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            RationalFunction inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
                ++pos_;
            }
            try {
                return RationalFunction(parse_rational(text_.substr(start, pos_ - start)));
            } catch (const InputError&) {
                pos_ = start;
                fail("malformed number");
            }
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            return RationalFunction::variable(std::string(text_.substr(start, pos_ - start)));
        }
        fail("unexpected character");
    }

    static constexpr std::size_t kMaxDepth = 200;
    static constexpr unsigned long kMaxExponent = 64;

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t depth_ = 0;
};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

RationalFunction parse_rational_function(std::string_view text)
{
    return Parser(text).parse();
}

Assignment parse_assignment(std::string_view text)
{
    Assignment out;
    if (trim(text).empty()) return out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        const std::string_view item = trim(text.substr(start, comma - start));
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw InputError("expected name=value in assignment, got '" + std::string(item) + "'");
        }
        const std::string name(trim(item.substr(0, eq)));
        if (!is_valid_variable_name(name)) throw InputError("invalid variable name '" + name + "'");
        if (out.count(name) != 0) throw InputError("variable '" + name + "' assigned twice");
        out.emplace(name, parse_rational(trim(item.substr(eq + 1))));
        start = comma + 1;
    }
    return out;
}

}  // namespace ravkit::symbolic
