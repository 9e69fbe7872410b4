#pragma once

// Exact sparse bivariate polynomials over the rationals.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace rjm {

using Rational = mpq_class;
using Integer = mpz_class;

/// Exponent pair (i, j) of the monomial x^i y^j.
struct LatticePoint {
    int i = 0;
    int j = 0;

    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

enum class Variable { X, Y };

/// Dihedral symmetry acting by substitution. The linear map is
/// M = diag(sx, sy) * (swap ? [[0,1],[1,0]] : I), and a polynomial p is sent
/// to p(M v).
struct Transform {
    bool swap_xy = false;
    bool negate_x = false;
    bool negate_y = false;

    static Transform identity() { return {}; }
    static Transform swap() { return {true, false, false}; }

    /// Integer matrix of the substitution, row major.
    std::array<int, 4> matrix() const;
    static Transform from_matrix(const std::array<int, 4>& m);

    /// Transform equal to applying *this first and then `next`.
    Transform then(const Transform& next) const;
    Transform inverse() const;
    bool is_identity() const { return !swap_xy && !negate_x && !negate_y; }

    /// Image of a point in the transformed frame back in the original frame.
    std::pair<double, double> to_original(double x, double y) const;

    std::string name() const;

    friend bool operator==(const Transform&, const Transform&) = default;
};

/// All eight transforms in a fixed order (identity first).
std::array<Transform, 8> all_transforms();

class BivariatePolynomial {
public:
    using TermMap = std::map<LatticePoint, Rational>;

    BivariatePolynomial() = default;
    explicit BivariatePolynomial(TermMap terms);

    static BivariatePolynomial constant(const Rational& c);
    static BivariatePolynomial monomial(const Rational& c, int i, int j);
    static BivariatePolynomial variable(Variable v);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Coefficient of x^i y^j (zero when absent).
    Rational coefficient(int i, int j) const;
    int degree_x() const;
    int degree_y() const;
    int total_degree() const;

    BivariatePolynomial operator-() const;
    BivariatePolynomial& operator+=(const BivariatePolynomial& o);
    BivariatePolynomial& operator-=(const BivariatePolynomial& o);
    BivariatePolynomial& operator*=(const Rational& c);
    friend BivariatePolynomial operator+(BivariatePolynomial a, const BivariatePolynomial& b) { return a += b; }
    friend BivariatePolynomial operator-(BivariatePolynomial a, const BivariatePolynomial& b) { return a -= b; }
    friend BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b);
    friend BivariatePolynomial operator*(BivariatePolynomial a, const Rational& c) { return a *= c; }
    BivariatePolynomial pow(unsigned e) const;

    friend bool operator==(const BivariatePolynomial&, const BivariatePolynomial&) = default;

    /// Canonical text: terms sorted by (i, j) descending, e.g. "x^2*y + x".
    std::string to_string() const;

private:
    void add_term(const LatticePoint& e, const Rational& c);
    TermMap terms_;
};

Rational evaluate(const BivariatePolynomial& p, const Rational& x, const Rational& y);

struct ApproxValue {
    double value = 0.0;
    bool finite = true;
};

/// Double precision evaluation, Horner in y within each x-row and Horner in x
/// across rows.
ApproxValue evaluate_approx(const BivariatePolynomial& p, double x, double y);

BivariatePolynomial partial_derivative(const BivariatePolynomial& p, Variable v);

/// p_x q_y - p_y q_x.
BivariatePolynomial jacobian(const BivariatePolynomial& p, const BivariatePolynomial& q);

BivariatePolynomial apply_transform(const BivariatePolynomial& p, const Transform& t);

BivariatePolynomial subtract_constant(const BivariatePolynomial& p, const Rational& t);

/// Rational -> double with correct handling of huge numerators/denominators.
double to_double(const Rational& r);

/// Exact rational text "n" or "n/d".
std::string to_string(const Rational& r);

}  // namespace rjm
