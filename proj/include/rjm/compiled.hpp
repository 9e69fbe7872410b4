#pragma once

// Double precision evaluation form of a BivariatePolynomial.

#include <vector>

#include "rjm/polynomial.hpp"

namespace rjm {

class CompiledPolynomial {
public:
    CompiledPolynomial() = default;
    explicit CompiledPolynomial(const BivariatePolynomial& p);

    /// Horner in y within each x-row, Horner in x across rows.
    double operator()(double x, double y) const;

    /// Largest |a_ij x^i y^j| over the terms; the natural scale for residuals.
    double term_scale(double x, double y) const;

    bool empty() const { return rows_.empty(); }

private:
    struct Row {
        int i = 0;
        std::vector<int> j;        // descending
        std::vector<double> coef;  // matching j
    };
    std::vector<Row> rows_;  // descending i
};

/// p together with its two partial derivatives, ready for numeric work.
struct CompiledGradient {
    CompiledPolynomial f;
    CompiledPolynomial fx;
    CompiledPolynomial fy;

    explicit CompiledGradient(const BivariatePolynomial& p);
};

}  // namespace rjm
