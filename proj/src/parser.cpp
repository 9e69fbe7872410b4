#include "rjm/parser.hpp"

#include <cctype>

namespace rjm {

namespace {

std::string describe(ParseErrorKind kind, std::size_t offset, const std::string& expected) {
    std::string msg = std::string(to_string(kind)) + " at offset " + std::to_string(offset);
    if (!expected.empty()) msg += ": expected " + expected;
    return msg;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    BivariatePolynomial parse() {
        skip_ws();
        if (pos_ == text_.size()) throw ParseError(ParseErrorKind::EmptyInput, pos_, "polynomial");
        auto p = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError(ParseErrorKind::Syntax, pos_, "operator or end of input");
        return p;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    BivariatePolynomial expr() {
        bool negate = false;
        if (accept('-')) negate = true;
        else accept('+');
        auto acc = term();
        if (negate) acc = -acc;
        while (true) {
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else break;
        }
        return acc;
    }

    BivariatePolynomial term() {
        auto acc = factor();
        while (accept('*')) acc = acc * factor();
        return acc;
    }

    BivariatePolynomial factor() {
        auto b = base();
        if (!accept('^')) return b;
        const char c = peek();
        if (c == '-' || c == '+') throw ParseError(ParseErrorKind::NonNaturalExponent, pos_, "natural exponent");
        if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError(ParseErrorKind::Syntax, pos_, "exponent");
        const std::size_t start = pos_;
        const Integer e = uint_literal();
        if (pos_ < text_.size() && (text_[pos_] == '/' || text_[pos_] == '.'))
            throw ParseError(ParseErrorKind::NonNaturalExponent, pos_, "natural exponent");
        if (e > kMaxExponent)
            throw ParseError(ParseErrorKind::ExponentTooLarge, start, "exponent <= " + std::to_string(kMaxExponent));
        return b.pow(static_cast<unsigned>(e.get_ui()));
    }

    BivariatePolynomial base() {
        const char c = peek();
        if (c == 'x') {
            ++pos_;
            return BivariatePolynomial::variable(Variable::X);
        }
        if (c == 'y') {
            ++pos_;
            return BivariatePolynomial::variable(Variable::Y);
        }
        if (c == '(') {
            ++pos_;
            auto inner = expr();
            if (!accept(')')) throw ParseError(ParseErrorKind::Syntax, pos_, "')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const Integer num = uint_literal();
            Integer den = 1;
            if (accept('/')) {
                if (!std::isdigit(static_cast<unsigned char>(peek())))
                    throw ParseError(ParseErrorKind::Syntax, pos_, "denominator");
                const std::size_t at = pos_;
                den = uint_literal();
                if (den == 0) throw ParseError(ParseErrorKind::ZeroDenominator, at, "nonzero denominator");
            }
            Rational r(num, den);
            r.canonicalize();
            return BivariatePolynomial::constant(r);
        }
        throw ParseError(ParseErrorKind::Syntax, pos_, "'x', 'y', number or '('");
    }

    Integer uint_literal() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return Integer(std::string(text_.substr(start, pos_ - start)), 10);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(ParseErrorKind kind, std::size_t offset, std::string expected)
    : std::runtime_error(describe(kind, offset, expected)),
      kind_(kind),
      offset_(offset),
      expected_(std::move(expected)) {}

const char* to_string(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::Syntax: return "SyntaxError";
        case ParseErrorKind::NonNaturalExponent: return "NonNaturalExponent";
        case ParseErrorKind::EmptyInput: return "EmptyInput";
        case ParseErrorKind::ExponentTooLarge: return "ExponentTooLarge";
        case ParseErrorKind::ZeroDenominator: return "ZeroDenominator";
    }
    return "ParseError";
}

BivariatePolynomial parse_polynomial(std::string_view text) { return Parser(text).parse(); }

}  // namespace rjm
