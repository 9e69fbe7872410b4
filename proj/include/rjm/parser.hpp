#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rjm/polynomial.hpp"

namespace rjm {

enum class ParseErrorKind { Syntax, NonNaturalExponent, EmptyInput, ExponentTooLarge, ZeroDenominator };

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::size_t offset, std::string expected);

    ParseErrorKind kind() const { return kind_; }
    /// Byte offset into the input where parsing stopped.
    std::size_t offset() const { return offset_; }
    const std::string& expected() const { return expected_; }

private:
    ParseErrorKind kind_;
    std::size_t offset_;
    std::string expected_;
};

const char* to_string(ParseErrorKind kind);

/// Largest exponent accepted after '^'.
inline constexpr unsigned kMaxExponent = 1000;

/// Parses and fully expands a polynomial in x and y.
///
///   expr     := ['+'|'-'] term {('+'|'-') term}
///   term     := factor {'*' factor}
///   factor   := base ['^' uint]
///   base     := 'x' | 'y' | rational | '(' expr ')'
///   rational := uint ['/' uint]
BivariatePolynomial parse_polynomial(std::string_view text);

}  // namespace rjm
