#include "rjm/newton_polygon.hpp"

#include <algorithm>
#include <numeric>

namespace rjm {

namespace {

long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return static_cast<long>(a.i - o.i) * (b.j - o.j) - static_cast<long>(a.j - o.j) * (b.i - o.i);
}

OuterEdge make_side(const LatticePoint& from, const LatticePoint& to) {
    const long dx = to.i - from.i;
    const long dy = to.j - from.j;
    long v1 = dy;
    long v2 = -dx;
    const long g = std::gcd(std::labs(v1), std::labs(v2));
    v1 /= g;
    v2 /= g;
    OuterEdge e;
    e.from = from;
    e.to = to;
    e.normal = {v1, v2};
    e.is_right = v1 > 0;
    if (e.is_right) e.slope = Rational(v2, v1);
    return e;
}

bool is_outward(const OuterEdge& e, const std::set<LatticePoint>& pts) {
    const long d = e.dot_value();
    return std::all_of(pts.begin(), pts.end(),
                       [&](const LatticePoint& s) { return e.normal.v1 * s.i + e.normal.v2 * s.j <= d; });
}

}  // namespace

std::set<LatticePoint> support(const BivariatePolynomial& p) {
    if (p.is_zero()) throw PolygonError(PolygonError::Kind::ZeroPolynomial, "zero polynomial has no Newton polygon");
    std::set<LatticePoint> s;
    for (const auto& [e, c] : p.terms()) s.insert(e);
    return s;
}

NewtonPolygon hull(const std::set<LatticePoint>& points) {
    if (points.empty()) throw PolygonError(PolygonError::Kind::EmptySupport, "empty support");
    NewtonPolygon poly;
    poly.support = points;
    std::vector<LatticePoint> pts(points.begin(), points.end());  // sorted by (i, j)
    if (pts.size() == 1) {
        poly.vertices = pts;
        return poly;
    }
    // Andrew's monotone chain, dropping collinear points.
    std::vector<LatticePoint> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t idx = pts.size() - 1, lower = k + 1; idx-- > 0;) {
        const auto& p = pts[idx];
        while (k >= lower && cross(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    h.resize(k - 1);
    // rotate to the lowest, then leftmost vertex
    auto start = std::min_element(h.begin(), h.end(), [](const LatticePoint& a, const LatticePoint& b) {
        return std::pair(a.j, a.i) < std::pair(b.j, b.i);
    });
    std::rotate(h.begin(), start, h.end());
    poly.vertices = std::move(h);
    return poly;
}

std::vector<OuterEdge> hull_sides(const NewtonPolygon& polygon) {
    const auto& v = polygon.vertices;
    std::vector<OuterEdge> sides;
    if (v.size() < 2) return sides;
    if (v.size() == 2) {
        sides.push_back(make_side(v[0], v[1]));
        sides.push_back(make_side(v[1], v[0]));
    } else {
        for (std::size_t k = 0; k < v.size(); ++k) sides.push_back(make_side(v[k], v[(k + 1) % v.size()]));
    }
    sides.erase(std::remove_if(sides.begin(), sides.end(),
                               [&](const OuterEdge& e) { return !is_outward(e, polygon.support); }),
                sides.end());
    return sides;
}

std::vector<OuterEdge> outer_edges(const NewtonPolygon& polygon) {
    if (polygon.vertices.size() < 2)
        throw PolygonError(PolygonError::Kind::PointPolygon, "Newton polygon is a single point");
    auto sides = hull_sides(polygon);
    std::erase_if(sides, [](const OuterEdge& e) { return !(e.normal.v1 > 0 || e.normal.v2 > 0); });
    return sides;
}

std::vector<OuterEdge> right_outer_edges(const NewtonPolygon& polygon) {
    auto edges = outer_edges(polygon);
    std::erase_if(edges, [](const OuterEdge& e) { return !e.is_right; });
    std::sort(edges.begin(), edges.end(), [](const OuterEdge& a, const OuterEdge& b) { return *a.slope < *b.slope; });
    return edges;
}

long lattice_point_count(const OuterEdge& edge) {
    return std::gcd(std::labs(edge.to.i - edge.from.i), std::labs(edge.to.j - edge.from.j)) + 1;
}

CriterionCertificate corollary_certificate(const BivariatePolynomial& p, bool allow_swap) {
    if (p.is_zero()) throw PolygonError(PolygonError::Kind::ZeroPolynomial, "zero polynomial");
    std::vector<Transform> order{Transform::identity()};
    if (allow_swap) order.push_back(Transform::swap());

    const LatticePoint base{0, 1};
    for (const auto& t : order) {
        const auto poly = newton_polygon(apply_transform(p, t));
        if (poly.vertices.size() < 2) continue;
        for (const auto& edge : right_outer_edges(poly)) {
            if (edge.from != base && edge.to != base) continue;
            const LatticePoint far = edge.from == base ? edge.to : edge.from;
            if (far.i <= 0 || far.j <= 1 || lattice_point_count(edge) != 2) continue;
            CriterionCertificate cert;
            cert.satisfied = true;
            cert.transform_used = t;
            OuterEdge oriented = edge;
            oriented.from = base;
            oriented.to = far;
            cert.witness_edge = oriented;
            cert.far_endpoint = far;
            cert.primitive_check = std::gcd(static_cast<long>(far.i), static_cast<long>(far.j - 1));
            cert.theta = edge.slope;
            return cert;
        }
    }
    return {};
}

std::map<int, Rational> face_polynomial(const BivariatePolynomial& p, const OuterEdge& edge) {
    const auto pts = support(p);
    const long k = edge.normal.v1;
    const long l = edge.normal.v2;
    const long dx = edge.to.i - edge.from.i;
    const long dy = edge.to.j - edge.from.j;
    const bool valid = k > 0 && std::gcd(k, std::labs(l)) == 1 && k * dx + l * dy == 0 && (dx != 0 || dy != 0) &&
                       pts.contains(edge.from) && pts.contains(edge.to) && is_outward(edge, pts);
    if (!valid)
        throw PolygonError(PolygonError::Kind::NotAnEdgeOfThisPolynomial, "edge is not a right outer edge of p");
    const long d = edge.dot_value();
    std::map<int, Rational> face;
    for (const auto& [e, c] : p.terms())
        if (k * e.i + l * e.j == d) face[e.j] += c;
    return face;
}

}  // namespace rjm
