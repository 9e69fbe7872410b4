#pragma once

// Dense univariate polynomials over Q with exact real root isolation.

#include <vector>

#include "rjm/polynomial.hpp"

namespace rjm {

class UnivariatePolynomial {
public:
    UnivariatePolynomial() = default;
    /// Coefficients in ascending degree order.
    explicit UnivariatePolynomial(std::vector<Rational> coeffs);

    /// p(x0, .) as a polynomial in y.
    static UnivariatePolynomial restrict_x(const BivariatePolynomial& p, const Rational& x0);

    const std::vector<Rational>& coefficients() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Rational& leading() const { return c_.back(); }

    Rational operator()(const Rational& t) const;
    double approx(double t) const;
    int sign_at(const Rational& t) const { return sgn((*this)(t)); }

    UnivariatePolynomial derivative() const;
    UnivariatePolynomial monic() const;
    UnivariatePolynomial operator-(const UnivariatePolynomial& o) const;
    UnivariatePolynomial operator-(const Rational& c) const;

    /// Quotient and remainder of Euclidean division.
    std::pair<UnivariatePolynomial, UnivariatePolynomial> divmod(const UnivariatePolynomial& d) const;

    /// Strips a factor t^k, returning k.
    int strip_zero_roots();

    friend bool operator==(const UnivariatePolynomial&, const UnivariatePolynomial&) = default;

private:
    void trim();
    std::vector<Rational> c_;
};

UnivariatePolynomial gcd(UnivariatePolynomial a, UnivariatePolynomial b);

/// Square-free factors: element k-1 holds the product of the irreducible
/// factors of multiplicity k (possibly constant 1).
std::vector<UnivariatePolynomial> squarefree_decomposition(const UnivariatePolynomial& p);

struct RootInterval {
    Rational lo;
    Rational hi;
    int multiplicity = 1;
    /// Root known exactly (lo < root = exact_value < hi).
    bool exact = false;
    Rational exact_value;
    double approx = 0.0;
};

/// Sturm sequence of a square-free polynomial.
class SturmSequence {
public:
    explicit SturmSequence(const UnivariatePolynomial& squarefree);
    int variations(const Rational& t) const;
    /// Number of distinct roots in (a, b].
    int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

private:
    std::vector<UnivariatePolynomial> seq_;
};

/// Cauchy bound: every root satisfies |t| < bound.
Rational root_bound(const UnivariatePolynomial& p);

/// Isolates all distinct real roots lying in the open interval (lo, hi),
/// each to an interval of width <= width, sorted ascending.
std::vector<RootInterval> isolate_roots(const UnivariatePolynomial& p, const Rational& lo, const Rational& hi,
                                        const Rational& width);

/// Isolates all distinct real roots.
std::vector<RootInterval> isolate_real_roots(const UnivariatePolynomial& p, const Rational& width);

/// Default isolation width 1e-12 as an exact rational.
Rational default_isolation_width();

}  // namespace rjm
