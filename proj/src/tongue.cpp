#include "rjm/tongue.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <unordered_map>

#include "rjm/compiled.hpp"
#include "rjm/kernels.hpp"
#include "rjm/solve.hpp"

namespace rjm {

double halton(unsigned long index, unsigned base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

const char* to_string(LevelClass c) {
    switch (c) {
        case LevelClass::Empty: return "Empty";
        case LevelClass::SegmentWithBoundaryEndpoints: return "SegmentWithBoundaryEndpoints";
        case LevelClass::ContainedInB: return "ContainedInB";
        case LevelClass::Irregular: return "Irregular";
    }
    return "?";
}

const char* to_string(TongueStatus s) {
    switch (s) {
        case TongueStatus::Verified: return "Verified";
        case TongueStatus::Inconclusive: return "Inconclusive";
        case TongueStatus::Failed: return "Failed";
    }
    return "?";
}

namespace {

// Keeps grid nodes and slice searches off the zero set at y = f(x).
constexpr double kBoundaryMargin = 1e-9;

std::vector<double> columns(double x0, double x1, int n) {
    if (x1 / x0 > 100.0) return kernels::geomspace(x0, x1, static_cast<std::size_t>(n));
    return kernels::linspace(x0, x1, static_cast<std::size_t>(n));
}

Rational isolation_width(double scale) {
    const Rational w = default_isolation_width();
    const Rational rel(scale * 1e-12);
    return (rel > 0 && rel < w) ? rel : w;
}

double root_value(const RootInterval& r) { return r.approx; }

Rational root_rational(const RootInterval& r) { return r.exact ? r.exact_value : Rational((r.lo + r.hi) / 2); }

}  // namespace

BoundaryCurve::BoundaryCurve(const TongueRegion& region) : region_(region), g_(region.normalized) {}

double BoundaryCurve::operator()(double x) const {
    const double guess = interpolate_trace(region_.boundary_trace, x);
    const auto f = [&](double y) { return g_.f(x, y); };
    const auto df = [&](double y) { return g_.fy(x, y); };
    const auto tol = [&](double y) { return 1e-14 * g_.f.term_scale(x, y); };
    for (double eta = 1e-3; eta <= 64.0; eta *= 2.0) {
        const double lo = guess / (1.0 + eta), hi = guess * (1.0 + eta);
        const double flo = f(lo), fhi = f(hi);
        if (!std::isfinite(flo) || !std::isfinite(fhi)) break;
        if (flo * fhi > 0) continue;
        return solve_bracketed(f, df, lo, hi, guess, tol, 200).x;
    }
    return guess;
}

double boundary_at(const TongueRegion& region, double x) { return BoundaryCurve(region)(x); }

RestrictionProfile restriction_profile(const BivariatePolynomial& p, const Rational& x0, double f_x0) {
    if (!(f_x0 > 0) || !std::isfinite(f_x0))
        throw TongueError(TongueError::Kind::NotSingleSignedOnInterval, "boundary value f(x0) must be positive");
    const auto h = UnivariatePolynomial::restrict_x(p, x0);
    const Rational upper(f_x0 * (1.0 - kBoundaryMargin));
    const Rational width = isolation_width(f_x0);
    if (h.is_zero() || !isolate_roots(h, 0, upper, width).empty() || h.sign_at(upper / 2) <= 0)
        throw TongueError(TongueError::Kind::NotSingleSignedOnInterval, "h is not positive on (0, f(x0))");

    const auto crit = isolate_roots(h.derivative(), 0, upper, width);
    if (crit.empty()) throw TongueError(TongueError::Kind::NoInteriorCriticalPoint, "h has no interior critical point");

    RestrictionProfile out;
    out.x0 = x0;
    out.f_x0 = f_x0;
    std::optional<Rational> lowest, highest;
    for (const auto& c : crit) {
        out.critical_points_of_h.push_back(root_value(c));
        const Rational v = h(root_rational(c));
        if (!lowest || v < *lowest) lowest = v;
        if (!highest || v > *highest) highest = v;
    }
    out.h_max = to_double(*highest);
    // Half the lowest critical value: h - t0 is then positive at every critical
    // point, so it has one root before the first and one after the last.
    out.t0 = Rational(to_double(*lowest / 2));
    if (out.t0 <= 0) throw TongueError(TongueError::Kind::NotSingleSignedOnInterval, "critical value of h not positive");

    const auto ab = isolate_roots(h - out.t0, 0, upper, width);
    if (ab.size() != 2 || ab[0].approx > out.critical_points_of_h.front() ||
        ab[1].approx < out.critical_points_of_h.back())
        throw TongueError(TongueError::Kind::NotSingleSignedOnInterval, "h - t0 does not have exactly two roots");
    out.a = root_value(ab[0]);
    out.b = root_value(ab[1]);
    return out;
}

BranchTrace trace_normal_form(const BivariatePolynomial& normalized, double x0, double x_max) {
    const auto cert = corollary_certificate(normalized, false);
    if (!cert.satisfied) throw TongueError(TongueError::Kind::NotCertified, "normal form has no criterion edge");
    const BranchAsymptote* chosen = nullptr;
    const auto candidates = branch_candidates(normalized, *cert.witness_edge);
    for (const auto& a : candidates)
        if (a.existence == Existence::Confirmed && a.c_star > 0 && (!chosen || a.c_star < chosen->c_star)) chosen = &a;
    if (!chosen) throw TongueError(TongueError::Kind::NoConfirmedBranch, "no confirmed positive branch");
    TraceConfig cfg;
    cfg.x_start = x0;
    cfg.x_end = x_max;
    return trace_branch(normalized, *chosen, cfg);
}

TongueRegion make_region(const BivariatePolynomial& normalized, const Transform& transform, bool sign_flipped,
                         const Rational& x0, BranchTrace boundary_trace) {
    TongueRegion region;
    region.transform = transform;
    region.sign_flipped = sign_flipped;
    region.normalized = normalized;
    region.x0 = x0;
    region.x_max = boundary_trace.samples.empty() ? to_double(x0) : boundary_trace.samples.back().x;
    region.boundary_trace = std::move(boundary_trace);
    region.profile = restriction_profile(normalized, x0, boundary_at(region, to_double(x0)));
    return region;
}

namespace {

// p(x, y) for quasi-random points of V must share one sign.
int sign_on_region(const BivariatePolynomial& p, const BranchTrace& trace, double x0, double x1) {
    TongueRegion probe;
    probe.normalized = p;
    probe.boundary_trace = trace;
    const BoundaryCurve f(probe);
    int sign = 0;
    for (unsigned long k = 1; k <= 100; ++k) {
        const double x = x0 * std::pow(x1 / x0, halton(k, 2));
        const double y = halton(k, 3) * f(x);
        const int s = sgn(evaluate(p, Rational(x), Rational(y)));
        if (s == 0 || (sign != 0 && s != sign))
            throw TongueError(TongueError::Kind::SignNotConstant, "p changes sign on the region V");
        sign = s;
    }
    return sign;
}

}  // namespace

TongueRegion build_tongue(const BivariatePolynomial& p, const TongueConfig& cfg) {
    if (!corollary_certificate(p, true).satisfied)
        throw TongueError(TongueError::Kind::NotCertified, "criterion not satisfied");
    PositiveBranch branch;
    try {
        branch = lowest_positive_branch(p, TraceConfig{});
    } catch (const AsymptoticsError& e) {
        throw TongueError(TongueError::Kind::NoConfirmedBranch, e.what());
    }
    const auto framed = apply_transform(p, branch.transform);
    const double theta = to_double(branch.asymptote.theta);
    double x_max = cfg.x_max.value_or(
        std::clamp(std::pow(1e-6 / branch.asymptote.c_star, 1.0 / theta), 50.0, 1e8));

    for (Rational x0 = cfg.x0; x0 <= cfg.max_x0; x0 *= 2) {
        const double x0d = to_double(x0);
        TraceConfig tc;
        tc.x_start = x0d;
        tc.x_end = std::max(x_max, 2.0 * x0d);
        try {
            auto trace = trace_branch(framed, branch.asymptote, tc);
            const bool flip = sign_on_region(framed, trace, x0d, tc.x_end) < 0;
            auto region = make_region(flip ? -framed : framed, branch.transform, flip, x0, std::move(trace));
            const GridSpec g{cfg.critical_columns, cfg.critical_columns, region.x_max, std::nullopt};
            if (check_no_critical_points(region.normalized, region, g).passed) return region;
        } catch (const TongueError& e) {
            if (e.kind() != TongueError::Kind::NotSingleSignedOnInterval &&
                e.kind() != TongueError::Kind::NoInteriorCriticalPoint)
                throw;
        } catch (const AsymptoticsError& e) {
            if (e.kind() != AsymptoticsError::Kind::BranchLost && e.kind() != AsymptoticsError::Kind::NoConvergence)
                throw;
        }
    }
    throw TongueError(TongueError::Kind::CriticalPointsPersist, "no x0 within budget clears the critical-point check");
}

namespace {

struct Hessian {
    CompiledPolynomial px, py, pxx, pxy, pyy;

    explicit Hessian(const BivariatePolynomial& p) {
        const auto dx = partial_derivative(p, Variable::X);
        const auto dy = partial_derivative(p, Variable::Y);
        px = CompiledPolynomial(dx);
        py = CompiledPolynomial(dy);
        pxx = CompiledPolynomial(partial_derivative(dx, Variable::X));
        pxy = CompiledPolynomial(partial_derivative(dx, Variable::Y));
        pyy = CompiledPolynomial(partial_derivative(dy, Variable::Y));
    }

    // Newton on grad p = 0; falls back to one-variable steps where the
    // Hessian is singular.
    Point refine(Point v) const {
        for (int it = 0; it < 60; ++it) {
            const double fx = px(v.x, v.y), fy = py(v.x, v.y);
            if (std::fabs(fx) < 1e-15 && std::fabs(fy) < 1e-15) break;
            const double a = pxx(v.x, v.y), b = pxy(v.x, v.y), d = pyy(v.x, v.y);
            const double det = a * d - b * b;
            double dxs = 0, dys = 0;
            if (std::fabs(det) > 1e-12 * (std::fabs(a * d) + b * b)) {
                dxs = -(d * fx - b * fy) / det;
                dys = -(a * fy - b * fx) / det;
            } else if (d != 0) {
                dys = -fy / d;
            } else if (a != 0) {
                dxs = -fx / a;
            } else {
                break;
            }
            if (!std::isfinite(dxs) || !std::isfinite(dys)) break;
            v.x += dxs;
            v.y += dys;
        }
        return v;
    }
};

}  // namespace

CriticalPointReport check_no_critical_points(const BivariatePolynomial& p, const TongueRegion& region,
                                             const GridSpec& grid) {
    CriticalPointReport report;
    const double x0 = to_double(region.x0);
    const double x1 = grid.x_max.value_or(region.x_max);
    if (!(x1 >= x0) || grid.nx < 2) {
        report.degenerate = true;
        return report;
    }
    const BoundaryCurve f(region);
    const Hessian h(p);
    const auto dy = partial_derivative(p, Variable::Y);
    const auto xs = columns(x0, x1, grid.nx);
    std::vector<double> fs(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) fs[k] = f(xs[k]);

    std::vector<Point> seeds;
    std::vector<std::pair<double, double>> previous;  // (y, p_x) on the last slice
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double x = xs[k];
        const double top = fs[k] * (1.0 - kBoundaryMargin);
        std::vector<std::pair<double, double>> current;
        const auto slice = UnivariatePolynomial::restrict_x(dy, Rational(x));
        if (slice.is_zero()) {
            current.emplace_back(0.5 * fs[k], h.px(x, 0.5 * fs[k]));
        } else {
            for (const auto& r : isolate_roots(slice, 0, Rational(top), isolation_width(fs[k])))
                current.emplace_back(r.approx, h.px(x, r.approx));
        }
        for (const auto& [y, v] : current) {
            if (std::fabs(v) <= 1e-6 * std::max(1.0, h.px.term_scale(x, y))) seeds.push_back({x, y});
            const auto near = std::min_element(previous.begin(), previous.end(), [&](const auto& l, const auto& r) {
                return std::fabs(l.first - y) < std::fabs(r.first - y);
            });
            if (near != previous.end() && (near->second < 0) != (v < 0))
                seeds.push_back({0.5 * (x + xs[k - 1]), 0.5 * (y + near->first)});
        }
        previous = std::move(current);
        ++report.columns_checked;
    }

    for (const auto& s : seeds) {
        const Point v = h.refine(s);
        if (!(std::fabs(h.px(v.x, v.y)) < 1e-9 && std::fabs(h.py(v.x, v.y)) < 1e-9)) continue;
        if (!(v.x >= x0 && v.x <= x1 && v.y > 0 && v.y < f(v.x))) continue;
        const bool seen = std::any_of(report.witnesses.begin(), report.witnesses.end(), [&](const Point& w) {
            return std::hypot(w.x - v.x, w.y - v.y) <= 1e-6 * std::max(1.0, std::hypot(v.x, v.y));
        });
        if (!seen) report.witnesses.push_back(v);
    }
    report.passed = report.witnesses.empty();

    // sampled gradient magnitude over interior nodes, for the record
    const double y_top = grid.y_max.value_or(*std::max_element(fs.begin(), fs.end()));
    const auto ys = kernels::linspace(0.0, y_top, static_cast<std::size_t>(std::max(grid.ny, 2)));
    std::vector<double> gx(xs.size() * ys.size()), gy(gx.size());
    kernels::evaluate_grid(h.px, xs, ys, gx);
    kernels::evaluate_grid(h.py, xs, ys, gy);
    report.min_gradient_norm = std::numeric_limits<double>::infinity();
    for (std::size_t iy = 0; iy < ys.size(); ++iy)
        for (std::size_t ix = 0; ix < xs.size(); ++ix) {
            if (!(ys[iy] > 0 && ys[iy] < fs[ix] * (1.0 - kBoundaryMargin))) continue;
            const std::size_t n = iy * xs.size() + ix;
            report.min_gradient_norm = std::min(report.min_gradient_norm, std::hypot(gx[n], gy[n]));
        }
    return report;
}

std::vector<Rational> default_levels(const RestrictionProfile& profile) {
    const Rational& t0 = profile.t0;
    const Rational hmax(profile.h_max);
    std::vector<Rational> t;
    for (int k = 1; k <= 20; ++k) t.push_back(t0 * k / 20);
    for (const Rational& q : {Rational(0), Rational(-1, 4), Rational(-1, 2), Rational(-1), Rational(-2)})
        t.push_back(t0 * q);
    for (const Rational& q : {Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(19, 20)})
        t.push_back(t0 + (hmax - t0) * q);
    t.push_back(2 * hmax);
    std::sort(t.begin(), t.end());
    return t;
}

namespace {

struct Lattice {
    std::vector<double> xs, ys, fs;
    std::vector<double> values;         // p on the nodes, row-major in y
    std::vector<unsigned char> inside;  // node lies in A
    std::size_t nx = 0, ny = 0;
    const BoundaryCurve* boundary = nullptr;

    std::size_t node(std::size_t ix, std::size_t iy) const { return iy * nx + ix; }
};

enum class EndKind { Boundary, Truncation, Escape };

// Marching squares for p = t restricted to A. Nodes outside A count as lying
// below the level; a crossing that does not land inside A is a cut point
// where the extracted curve would run along the border of V, and polylines
// are split there.
class LevelExtractor {
public:
    LevelExtractor(const Lattice& lat, const CompiledGradient& g, double t) : lat_(lat), g_(g), t_(t) {}

    LevelRecord run() {
        const std::size_t nx = lat_.nx, ny = lat_.ny;
        for (std::size_t iy = 0; iy + 1 < ny; ++iy) {
            for (std::size_t ix = 0; ix + 1 < nx; ++ix) {
                const bool s0 = above(ix, iy), s1 = above(ix + 1, iy), s2 = above(ix + 1, iy + 1),
                           s3 = above(ix, iy + 1);
                const std::array<bool, 4> cut{s0 != s1, s1 != s2, s3 != s2, s0 != s3};
                const int n = cut[0] + cut[1] + cut[2] + cut[3];
                if (n == 0) continue;
                const long e0 = h_edge(ix, iy), e1 = v_edge(ix + 1, iy), e2 = h_edge(ix, iy + 1), e3 = v_edge(ix, iy);
                if (n == 2) {
                    const std::array<long, 4> ids{e0, e1, e2, e3};
                    long a = -1, b = -1;
                    for (int k = 0; k < 4; ++k)
                        if (cut[k]) (a < 0 ? a : b) = ids[k];
                    link(a, b);
                    continue;
                }
                const double xc = 0.5 * (lat_.xs[ix] + lat_.xs[ix + 1]);
                const double yc = 0.5 * (lat_.ys[iy] + lat_.ys[iy + 1]);
                const double gc = g_.f(xc, yc) - t_;
                if (gc == 0)
                    throw TongueError(TongueError::Kind::ResolutionTooCoarse, "saddle cell center lies on the level");
                if ((gc > 0) == s0) {
                    link(e0, e1);
                    link(e2, e3);
                } else {
                    link(e0, e3);
                    link(e1, e2);
                }
            }
        }
        return collect();
    }

private:
    struct Node {
        Point at;
        long edge = 0;
        bool real = true;
        int degree = 0;
        std::array<int, 2> next{-1, -1};
    };

    bool above(std::size_t ix, std::size_t iy) const {
        const std::size_t k = lat_.node(ix, iy);
        return lat_.inside[k] && lat_.values[k] - t_ > 0;
    }
    long h_edge(std::size_t ix, std::size_t iy) const { return static_cast<long>(iy * (lat_.nx - 1) + ix); }
    long v_edge(std::size_t ix, std::size_t iy) const {
        return static_cast<long>(lat_.ny * (lat_.nx - 1) + iy * lat_.nx + ix);
    }
    bool vertical(long e) const { return e >= static_cast<long>(lat_.ny * (lat_.nx - 1)); }

    // Endpoints of an edge as (ix, iy) pairs.
    std::array<std::size_t, 4> ends(long e) const {
        if (!vertical(e)) {
            const auto iy = static_cast<std::size_t>(e) / (lat_.nx - 1), ix = static_cast<std::size_t>(e) % (lat_.nx - 1);
            return {ix, iy, ix + 1, iy};
        }
        const auto rest = static_cast<std::size_t>(e) - lat_.ny * (lat_.nx - 1);
        const std::size_t iy = rest / lat_.nx, ix = rest % lat_.nx;
        return {ix, iy, ix, iy + 1};
    }

    Node crossing(long e) const {
        const auto [ix0, iy0, ix1, iy1] = ends(e);
        const bool both_inside = lat_.inside[lat_.node(ix0, iy0)] && lat_.inside[lat_.node(ix1, iy1)];
        const double g0 = lat_.values[lat_.node(ix0, iy0)] - t_;
        const double g1 = lat_.values[lat_.node(ix1, iy1)] - t_;
        Node n;
        n.edge = e;
        n.at = {0.5 * (lat_.xs[ix0] + lat_.xs[ix1]), 0.5 * (lat_.ys[iy0] + lat_.ys[iy1])};
        if (!both_inside && (g0 > 0) == (g1 > 0)) {
            n.real = false;
            return n;
        }
        if (!vertical(e)) {
            const double y = lat_.ys[iy0];
            const auto f = [&](double x) { return g_.f(x, y) - t_; };
            const auto df = [&](double x) { return g_.fx(x, y); };
            const auto tol = [&](double x) { return 1e-14 * std::max(g_.f.term_scale(x, y), std::fabs(t_)); };
            n.at.x = solve_bracketed(f, df, lat_.xs[ix0], lat_.xs[ix1], n.at.x, tol, 200).x;
        } else {
            const double x = lat_.xs[ix0];
            const auto f = [&](double y) { return g_.f(x, y) - t_; };
            const auto df = [&](double y) { return g_.fy(x, y); };
            const auto tol = [&](double y) { return 1e-14 * std::max(g_.f.term_scale(x, y), std::fabs(t_)); };
            n.at.y = solve_bracketed(f, df, lat_.ys[iy0], lat_.ys[iy1], n.at.y, tol, 200).x;
        }
        if (!both_inside) {
            const double top = vertical(e) ? lat_.fs[ix0] : (*lat_.boundary)(n.at.x);
            n.real = n.at.y > 0 && n.at.y < top * (1.0 - kBoundaryMargin);
        }
        return n;
    }

    int node_for(long e) {
        const auto it = index_.find(e);
        if (it != index_.end()) return it->second;
        nodes_.push_back(crossing(e));
        const int id = static_cast<int>(nodes_.size()) - 1;
        index_.emplace(e, id);
        return id;
    }

    void link(long ea, long eb) {
        const int a = node_for(ea), b = node_for(eb);
        nodes_[a].next[nodes_[a].degree++] = b;
        nodes_[b].next[nodes_[b].degree++] = a;
    }

    std::vector<int> real_neighbours(int k) const {
        std::vector<int> out;
        for (int d = 0; d < nodes_[k].degree; ++d)
            if (nodes_[nodes_[k].next[d]].real) out.push_back(nodes_[k].next[d]);
        return out;
    }

    // Kinds of the polyline ends carried by node k once cut points are removed.
    void count_ends(LevelRecord& r, int k) const {
        const Node& n = nodes_[k];
        const int cut = n.degree - static_cast<int>(real_neighbours(k).size());
        r.escapes += cut;
        if (n.degree == 2) return;
        EndKind kind = EndKind::Escape;
        if (vertical(n.edge)) {
            const auto ix = ends(n.edge)[0];
            if (ix == 0) kind = EndKind::Boundary;
            else if (ix == lat_.nx - 1) kind = EndKind::Truncation;
        }
        switch (kind) {
            case EndKind::Boundary: ++r.boundary_endpoint_count; break;
            case EndKind::Truncation: ++r.truncation_hits; break;
            case EndKind::Escape: ++r.escapes; break;
        }
    }

    // Follows unvisited real neighbours from `start`; returns the last node reached.
    int walk(int start, std::vector<unsigned char>& seen, std::vector<Point>& line) const {
        int last = start;
        for (int cur = start; cur >= 0;) {
            seen[cur] = 1;
            line.push_back(nodes_[cur].at);
            last = cur;
            int nxt = -1;
            for (int m : real_neighbours(cur))
                if (!seen[m]) {
                    nxt = m;
                    break;
                }
            cur = nxt;
        }
        return last;
    }

    LevelRecord collect() const {
        LevelRecord r;
        std::vector<unsigned char> seen(nodes_.size(), 0);
        for (std::size_t k = 0; k < nodes_.size(); ++k) {
            if (seen[k] || !nodes_[k].real || real_neighbours(static_cast<int>(k)).size() == 2) continue;
            std::vector<Point> line;
            const int far = walk(static_cast<int>(k), seen, line);
            count_ends(r, static_cast<int>(k));
            if (far != static_cast<int>(k)) count_ends(r, far);
            r.polylines.push_back(std::move(line));
        }
        for (std::size_t k = 0; k < nodes_.size(); ++k) {
            if (seen[k] || !nodes_[k].real) continue;
            std::vector<Point> line;
            walk(static_cast<int>(k), seen, line);
            line.push_back(line.front());
            r.closed_loop_detected = true;
            r.polylines.push_back(std::move(line));
        }
        r.component_count = static_cast<int>(r.polylines.size());
        return r;
    }

    const Lattice& lat_;
    const CompiledGradient& g_;
    double t_;
    std::vector<Node> nodes_;
    std::unordered_map<long, int> index_;
};

bool inside_polygon(const std::vector<Point>& poly, const Point& p) {
    bool in = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const Point& a = poly[i];
        const Point& b = poly[j];
        if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) in = !in;
    }
    return in;
}

int sign_changes_on_segment(const UnivariatePolynomial& h, const Rational& t, double f_x0) {
    const auto roots =
        isolate_roots(h - t, 0, Rational(f_x0 * (1.0 - kBoundaryMargin)), isolation_width(f_x0));
    return static_cast<int>(std::count_if(roots.begin(), roots.end(), [](const auto& r) { return r.multiplicity % 2; }));
}

}  // namespace

LevelSetReport check_level_sets(const BivariatePolynomial& p, const TongueRegion& region,
                                const std::vector<Rational>& t_values, const GridSpec& grid) {
    std::vector<Rational> ts = t_values;
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    LevelSetReport report;
    const double x0 = to_double(region.x0);
    const double x1 = grid.x_max.value_or(region.x_max);
    const Rational& t0 = region.profile.t0;
    const auto h = UnivariatePolynomial::restrict_x(p, region.x0);

    Lattice lat;
    const BoundaryCurve f(region);
    lat.boundary = &f;
    const bool degenerate = !(x1 > x0) || grid.nx < 2 || grid.ny < 2;
    if (!degenerate) {
        lat.xs = columns(x0, x1, grid.nx);
        lat.fs.resize(lat.xs.size());
        for (std::size_t k = 0; k < lat.xs.size(); ++k) lat.fs[k] = f(lat.xs[k]);
        const double y_top = grid.y_max.value_or(*std::max_element(lat.fs.begin(), lat.fs.end()));
        lat.ys = kernels::linspace(0.0, y_top, static_cast<std::size_t>(grid.ny));
        lat.nx = lat.xs.size();
        lat.ny = lat.ys.size();
        lat.values.resize(lat.nx * lat.ny);
        kernels::evaluate_grid(CompiledPolynomial(p), lat.xs, lat.ys, lat.values);
        lat.inside.resize(lat.values.size());
        for (std::size_t iy = 0; iy < lat.ny; ++iy)
            for (std::size_t ix = 0; ix < lat.nx; ++ix)
                lat.inside[lat.node(ix, iy)] = lat.ys[iy] > 0 && lat.ys[iy] < lat.fs[ix] * (1.0 - kBoundaryMargin);
    }

    const CompiledGradient g(p);
    auto extract = [&](const Rational& t) {
        LevelRecord r = degenerate ? LevelRecord{} : LevelExtractor(lat, g, to_double(t)).run();
        r.t = t;
        r.expected_endpoint_count = sign_changes_on_segment(h, t, region.profile.f_x0);
        return r;
    };

    // B: closure of the t0 arc joined by the segment [a, b] on x = x0
    const LevelRecord base = extract(t0);
    if (base.component_count == 1 && !base.closed_loop_detected && base.boundary_endpoint_count == 2 &&
        base.escapes == 0 && base.truncation_hits == 0)
        report.b_outline = base.polylines.front();
    if (!report.b_outline.empty()) report.b_outline.push_back(report.b_outline.front());

    const double band = degenerate ? 0.0 : lat.ys[1] - lat.ys[0];
    auto in_b = [&](const Point& q) {
        if (std::fabs(q.x - x0) <= 1e-12 * std::max(1.0, x0))
            return q.y >= region.profile.a - band && q.y <= region.profile.b + band;
        return inside_polygon(report.b_outline, q);
    };

    report.levels.resize(ts.size());
    std::vector<std::exception_ptr> errors(ts.size());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < static_cast<long>(ts.size()); ++k) {
        try {
            report.levels[k] = ts[k] == t0 ? base : extract(ts[k]);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    report.passed = true;
    for (auto& r : report.levels) {
        const bool segment = r.component_count == 1 && !r.closed_loop_detected && r.boundary_endpoint_count == 2 &&
                             r.truncation_hits == 0 && r.escapes == 0;
        bool within_b = !report.b_outline.empty() && r.t > t0 && !r.closed_loop_detected;
        for (const auto& line : r.polylines)
            for (const auto& q : line) within_b = within_b && in_b(q);

        if (r.polylines.empty()) r.classification = LevelClass::Empty;
        else if (within_b) r.classification = LevelClass::ContainedInB;
        else if (segment) r.classification = LevelClass::SegmentWithBoundaryEndpoints;
        else r.classification = LevelClass::Irregular;

        if (r.t <= 0) r.passed = r.classification == LevelClass::Empty;
        else if (r.t <= t0)
            r.passed = r.classification == LevelClass::SegmentWithBoundaryEndpoints &&
                       r.boundary_endpoint_count == r.expected_endpoint_count;
        else r.passed = r.classification == LevelClass::Empty || r.classification == LevelClass::ContainedInB;
        r.passed = r.passed && !r.closed_loop_detected;
        report.passed = report.passed && r.passed;
    }
    return report;
}

TongueCertificate tongue_certificate(const BivariatePolynomial& p, const TongueConfig& cfg) {
    TongueCertificate out;
    out.criterion = corollary_certificate(p, true);
    if (!out.criterion.satisfied) {
        out.status = TongueStatus::Failed;
        out.reasons.emplace_back("criterion not satisfied");
        return out;
    }
    try {
        out.region = build_tongue(p, cfg);
    } catch (const TongueError& e) {
        out.status = e.kind() == TongueError::Kind::CriticalPointsPersist ? TongueStatus::Failed
                                                                          : TongueStatus::Inconclusive;
        out.reasons.emplace_back(e.what());
        return out;
    } catch (const AsymptoticsError& e) {
        out.status = TongueStatus::Inconclusive;
        out.reasons.emplace_back(e.what());
        return out;
    }
    const auto& region = *out.region;
    out.critical_points = check_no_critical_points(
        region.normalized, region, GridSpec{cfg.critical_columns, cfg.critical_columns, region.x_max, std::nullopt});
    try {
        out.levels = check_level_sets(region.normalized, region, default_levels(region.profile), cfg.grid);
    } catch (const TongueError& e) {
        out.status = TongueStatus::Inconclusive;
        out.reasons.emplace_back(e.what());
        return out;
    }

    bool loop = false;
    for (const auto& r : out.levels->levels) {
        loop = loop || r.closed_loop_detected;
        if (!r.passed)
            out.reasons.push_back("level t=" + to_string(r.t) + " classified " + to_string(r.classification));
    }
    if (!out.critical_points->passed) out.reasons.emplace_back("critical point inside V");
    if (out.critical_points->passed && out.levels->passed) out.status = TongueStatus::Verified;
    else if (loop || !out.critical_points->passed) out.status = TongueStatus::Failed;
    else out.status = TongueStatus::Inconclusive;
    return out;
}

}  // namespace rjm
