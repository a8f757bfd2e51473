#include "pscale/parse.hpp"

#include <cctype>
#include <string>

namespace pscale {

namespace {

class Parser {
public:
    Parser(std::string_view text, int nvars, int cap) : text_(text), nvars_(nvars), cap_(cap) {}

    Poly parse()
    {
        Poly p = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool peek(char c)
    {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c)
    {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    bool accept_word(std::string_view word)
    {
        skip_ws();
        if (text_.substr(pos_, word.size()) == word) {
            pos_ += word.size();
            return true;
        }
        return false;
    }

    Poly expr()
    {
        Poly acc(nvars_);
        bool negate = false;
        if (accept('-')) {
            negate = true;
        } else {
            accept('+');
        }
        Poly t = term();
        acc = negate ? -t : t;
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                break;
            }
        }
        return acc;
    }

    Poly term()
    {
        Poly acc = factor();
        while (accept('*')) {
            acc = mul(acc, factor(), cap_);
        }
        return acc;
    }

    Poly factor()
    {
        Poly b = base();
        if (accept('^')) {
            skip_ws();
            if (peek('-')) {
                fail("negative exponent");
            }
            const std::size_t at = pos_;
            const unsigned long e = uint_literal();
            if (e > static_cast<unsigned long>(cap_)) {
                pos_ = at;
                fail("exponent exceeds degree cap");
            }
            b = pow(b, static_cast<int>(e), cap_);
        }
        return b;
    }

    Poly base()
    {
        skip_ws();
        if (pos_ >= text_.size()) {
            fail("unexpected end of expression");
        }
        if (accept_word("Re(")) {
            Poly e = closed_expr();
            return scale(e + conjugate(e), Gaussian(Rational(1, 2)));
        }
        if (accept_word("Im(")) {
            Poly e = closed_expr();
            // (e - conj e) / (2i) = -i/2 * (e - conj e)
            return scale(e - conjugate(e), Gaussian(Rational(0), Rational(-1, 2)));
        }
        if (accept_word("abs2(")) {
            Poly e = closed_expr();
            return mul(e, conjugate(e), cap_);
        }
        if (accept_word("conj(")) {
            return conjugate(closed_expr());
        }
        if (accept('(')) {
            return closed_expr();
        }
        const char c = text_[pos_];
        if (c == 'z') {
            return variable();
        }
        if (c == 'i' && !ident_char_at(pos_ + 1)) {
            ++pos_;
            return Poly::constant(nvars_, Gaussian::imag_unit());
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return Poly::constant(nvars_, Gaussian(number()));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Poly closed_expr()
    {
        Poly e = expr();
        expect(')');
        return e;
    }

    bool ident_char_at(std::size_t at) const
    {
        return at < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[at])) || text_[at] == '_');
    }

    Poly variable()
    {
        const std::size_t start = pos_;
        ++pos_;  // 'z'
        bool barred = false;
        if (pos_ < text_.size() && text_[pos_] == 'b') {
            barred = true;
            ++pos_;
        }
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            fail("expected variable index");
        }
        const unsigned long idx = uint_literal();
        if (idx < 1 || idx > static_cast<unsigned long>(nvars_)) {
            pos_ = start;
            fail("variable index " + std::to_string(idx) + " exceeds nvars " +
                 std::to_string(nvars_));
        }
        return Poly::variable(nvars_, static_cast<int>(idx), barred);
    }

    unsigned long uint_literal()
    {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected unsigned integer");
        }
        const std::string digits(text_.substr(start, pos_ - start));
        if (digits.size() > 9) {
            pos_ = start;
            fail("integer too large");
        }
        return std::stoul(digits);
    }

    Rational number()
    {
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
        };
        digits();
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            const std::size_t den_start = pos_;
            digits();
            if (den_start == pos_) {
                fail("expected denominator");
            }
        } else {
            if (pos_ < text_.size() && text_[pos_] == '.') {
                ++pos_;
                digits();
            }
            if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
                ++pos_;
                if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                    ++pos_;
                }
                const std::size_t exp_start = pos_;
                digits();
                if (exp_start == pos_) {
                    fail("expected exponent digits");
                }
            }
        }
        try {
            return parse_rational(text_.substr(start, pos_ - start));
        } catch (const ParseError& e) {
            throw ParseError("malformed number", start + e.position());
        }
    }

    std::string_view text_;
    int nvars_;
    int cap_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, int nvars, int degree_cap)
{
    if (nvars < 0) {
        throw ShapeError("nvars must be nonnegative");
    }
    return Parser(text, nvars, degree_cap).parse();
}

RealPoly parse_real_poly(std::string_view text, int nvars)
{
    return RealPoly(parse_poly(text, nvars));
}

Gaussian parse_scalar(std::string_view text)
{
    Poly p = parse_poly(text, 0);
    return p.coeff(Multidegree(0));
}

Rational parse_rational(std::string_view text)
{
    std::size_t pos = 0;
    auto is_digit = [&](std::size_t at) {
        return at < text.size() && std::isdigit(static_cast<unsigned char>(text[at]));
    };
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negative = text[pos] == '-';
        ++pos;
    }
    const std::size_t int_start = pos;
    while (is_digit(pos)) ++pos;
    std::string int_digits(text.substr(int_start, pos - int_start));

    Rational value;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        const std::size_t den_start = pos;
        while (is_digit(pos)) ++pos;
        if (int_digits.empty() || den_start == pos) {
            throw ParseError("malformed rational", pos);
        }
        mpz_class num(int_digits, 10);
        mpz_class den(std::string(text.substr(den_start, pos - den_start)), 10);
        if (sgn(den) == 0) {
            throw ParseError("zero denominator", den_start);
        }
        value = Rational(num, den);
        value.canonicalize();
    } else {
        std::string frac_digits;
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            const std::size_t frac_start = pos;
            while (is_digit(pos)) ++pos;
            frac_digits = std::string(text.substr(frac_start, pos - frac_start));
        }
        if (int_digits.empty() && frac_digits.empty()) {
            throw ParseError("expected number", pos);
        }
        long exponent = 0;
        if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
            ++pos;
            bool eneg = false;
            if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
                eneg = text[pos] == '-';
                ++pos;
            }
            const std::size_t exp_start = pos;
            while (is_digit(pos)) ++pos;
            if (exp_start == pos || pos - exp_start > 6) {
                throw ParseError("malformed exponent", exp_start);
            }
            exponent = std::stol(std::string(text.substr(exp_start, pos - exp_start)));
            if (eneg) exponent = -exponent;
        }
        const std::string all = (int_digits.empty() ? "0" : int_digits) + frac_digits;
        mpz_class num(all, 10);
        exponent -= static_cast<long>(frac_digits.size());
        mpz_class p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
        if (exponent >= 0) {
            value = Rational(num * p10);
        } else {
            value = Rational(num, p10);
            value.canonicalize();
        }
    }
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) {
        throw ParseError("trailing characters in number", pos);
    }
    return negative ? Rational(-value) : value;
}

}  // namespace pscale
