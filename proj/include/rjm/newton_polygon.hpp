#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "rjm/polynomial.hpp"

namespace rjm {

class PolygonError : public std::runtime_error {
public:
    enum class Kind { ZeroPolynomial, EmptySupport, PointPolygon, NotAnEdgeOfThisPolynomial, NotRightOuterEdge };
    PolygonError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct Normal {
    long v1 = 0;
    long v2 = 0;
    friend bool operator==(const Normal&, const Normal&) = default;
};

struct OuterEdge {
    LatticePoint from;
    LatticePoint to;
    /// Primitive outward normal.
    Normal normal;
    bool is_right = false;
    /// v2 / v1, present iff is_right.
    std::optional<Rational> slope;

    long dot_value() const { return normal.v1 * from.i + normal.v2 * from.j; }
    friend bool operator==(const OuterEdge&, const OuterEdge&) = default;
};

struct NewtonPolygon {
    /// Counterclockwise, strictly convex, starting at the lowest (then leftmost) vertex.
    std::vector<LatticePoint> vertices;
    std::set<LatticePoint> support;
};

std::set<LatticePoint> support(const BivariatePolynomial& p);

NewtonPolygon hull(const std::set<LatticePoint>& points);
inline NewtonPolygon newton_polygon(const BivariatePolynomial& p) { return hull(support(p)); }

/// Every hull side with its primitive outward normal, counterclockwise. A
/// segment yields both of its sides.
std::vector<OuterEdge> hull_sides(const NewtonPolygon& polygon);

/// Sides whose outward normal has v1 > 0 or v2 > 0.
std::vector<OuterEdge> outer_edges(const NewtonPolygon& polygon);

/// Outer edges with v1 > 0, sorted by slope ascending.
std::vector<OuterEdge> right_outer_edges(const NewtonPolygon& polygon);

/// Lattice points on the closed segment.
long lattice_point_count(const OuterEdge& edge);

struct CriterionCertificate {
    bool satisfied = false;
    Transform transform_used;
    /// Oriented so that `from` is (0,1).
    std::optional<OuterEdge> witness_edge;
    /// Far endpoint (a, b) of the witness edge.
    std::optional<LatticePoint> far_endpoint;
    /// gcd(a, b - 1).
    long primitive_check = 0;
    std::optional<Rational> theta;
};

/// Decides the lattice criterion: a right outer edge starting at (0,1), rising
/// to (a,b) with b > 1, and primitive. Identity is tried before the x<->y swap.
CriterionCertificate corollary_certificate(const BivariatePolynomial& p, bool allow_swap = true);

/// Face polynomial along a right outer edge with normal (k,l): the coefficient
/// of c^j is the sum of a_ij over support points with k*i + l*j = d.
std::map<int, Rational> face_polynomial(const BivariatePolynomial& p, const OuterEdge& edge);

}  // namespace rjm
