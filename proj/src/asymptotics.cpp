#include "rjm/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rjm/compiled.hpp"
#include "rjm/solve.hpp"

namespace rjm {

void TraceConfig::validate() const {
    if (!(x_start >= 1.0)) throw std::invalid_argument("trace x_start must be >= 1");
    if (!(x_end >= x_start)) throw std::invalid_argument("trace x_end must be >= x_start");
    if (!(growth_factor > 1.0)) throw std::invalid_argument("trace growth_factor must be > 1");
    if (!(newton_tol > 0.0)) throw std::invalid_argument("trace newton_tol must be > 0");
    if (max_newton_iters < 1) throw std::invalid_argument("trace max_newton_iters must be >= 1");
}

UnivariatePolynomial face_univariate(const BivariatePolynomial& p, const OuterEdge& edge) {
    const auto face = face_polynomial(p, edge);
    std::vector<Rational> c(static_cast<std::size_t>(face.rbegin()->first) + 1);
    for (const auto& [j, a] : face) c[static_cast<std::size_t>(j)] = a;
    return UnivariatePolynomial(std::move(c));
}

namespace {

Rational rational_power(const Rational& s, long e) {
    Rational r = 1;
    const Rational b = e < 0 ? Rational(1 / s) : s;
    for (long k = 0; k < std::labs(e); ++k) r *= b;
    return r;
}

double power_law(double x, const Rational& theta) { return std::pow(x, to_double(theta)); }

}  // namespace

SignProbe sign_probe(const BivariatePolynomial& p, const Rational& theta, double c_minus, double c_plus,
                     double x_probe) {
    if (!std::isfinite(c_minus) || !std::isfinite(c_plus) || !std::isfinite(x_probe))
        throw AsymptoticsError(AsymptoticsError::Kind::NonFiniteEvaluation, "sign probe input is not finite");
    if (!(x_probe >= 1.0)) throw std::invalid_argument("sign probe needs x_probe >= 1");
    if (!(c_minus < c_plus)) throw std::invalid_argument("sign probe needs c_minus < c_plus");

    const long k = theta.get_den().get_si();
    const long l = theta.get_num().get_si();
    const double root = std::round(std::pow(x_probe, 1.0 / static_cast<double>(k)));
    const Rational s = Rational(std::max(root, 1.0));
    const Rational x = rational_power(s, k);
    const Rational base_y = rational_power(s, l);

    SignProbe probe;
    probe.x_probe = to_double(x);
    probe.c_minus = c_minus;
    probe.c_plus = c_plus;
    probe.sign_minus = sgn(evaluate(p, x, Rational(c_minus) * base_y));
    probe.sign_plus = sgn(evaluate(p, x, Rational(c_plus) * base_y));
    probe.straddles = probe.sign_minus * probe.sign_plus == -1;
    return probe;
}

std::vector<BranchAsymptote> branch_candidates(const BivariatePolynomial& p, const OuterEdge& edge) {
    if (!edge.is_right)
        throw AsymptoticsError(AsymptoticsError::Kind::NotRightOuterEdge, "branch candidates need a right outer edge");
    auto phi = face_univariate(p, edge);
    phi.strip_zero_roots();
    const auto roots = isolate_real_roots(phi, default_isolation_width());
    const Rational theta = *edge.slope;

    std::vector<BranchAsymptote> out;
    for (std::size_t r = 0; r < roots.size(); ++r) {
        const auto& root = roots[r];
        BranchAsymptote a;
        a.edge = edge;
        a.theta = theta;
        a.c_lo = root.lo;
        a.c_hi = root.hi;
        a.c_star = root.approx;
        a.root_multiplicity = root.multiplicity;

        // Probe curves sit a quarter of the way to the nearest other root of
        // c^m phi(c), zero included, so both keep the sign of c*.
        double gap = std::fabs(a.c_star);
        if (r > 0) gap = std::min(gap, a.c_star - roots[r - 1].approx);
        if (r + 1 < roots.size()) gap = std::min(gap, roots[r + 1].approx - a.c_star);
        const double delta = 0.25 * gap;
        a.probe_lo = a.c_star - delta;
        a.probe_hi = a.c_star + delta;

        bool all = true;
        for (double x : kProbeSchedule) {
            a.probes.push_back(sign_probe(p, theta, a.probe_lo, a.probe_hi, x));
            all = all && a.probes.back().straddles;
        }
        a.existence = all ? Existence::Confirmed : Existence::Inconclusive;
        out.push_back(std::move(a));
    }
    return out;
}

namespace {

struct SliceSolver {
    const CompiledGradient& g;
    const TraceConfig& cfg;

    // Zero of p(x, .) inside [y1, y2] (either order), starting from guess.
    std::optional<TraceSample> solve(double x, double y1, double y2, double guess) const {
        const auto f = [&](double y) { return g.f(x, y); };
        const auto df = [&](double y) { return g.fy(x, y); };
        const auto tol = [&](double y) { return cfg.newton_tol * g.f.term_scale(x, y); };
        const double lo = std::min(y1, y2);
        const double hi = std::max(y1, y2);
        const double flo = f(lo);
        const double fhi = f(hi);
        if (!std::isfinite(flo) || !std::isfinite(fhi))
            throw AsymptoticsError(AsymptoticsError::Kind::NonFiniteEvaluation, "branch evaluation overflowed");
        if (flo * fhi > 0) return std::nullopt;
        const auto r = solve_bracketed(f, df, lo, hi, guess, tol, cfg.max_newton_iters);
        if (!r.converged) throw AsymptoticsError(AsymptoticsError::Kind::NoConvergence, "root refinement did not converge");
        return TraceSample{x, r.x, std::fabs(r.fx)};
    }

    // Expands a multiplicative bracket around the predictor until p changes sign.
    std::optional<TraceSample> around(double x, double predictor) const {
        for (double eta = 1e-3; eta <= 64.0; eta *= 2.0) {
            auto s = solve(x, predictor / (1.0 + eta), predictor * (1.0 + eta), predictor);
            if (s) return s;
        }
        return std::nullopt;
    }
};

}  // namespace

BranchTrace trace_branch(const BivariatePolynomial& p, const BranchAsymptote& asymptote, const TraceConfig& cfg) {
    cfg.validate();
    if (asymptote.existence != Existence::Confirmed)
        throw AsymptoticsError(AsymptoticsError::Kind::Precondition, "only confirmed asymptotes can be traced");

    std::vector<double> xs;
    for (double x = cfg.x_start; x < cfg.x_end * (1 - 1e-12); x *= cfg.growth_factor) xs.push_back(x);
    xs.push_back(cfg.x_end);

    const CompiledGradient g(p);
    const SliceSolver solver{g, cfg};
    const double theta = to_double(asymptote.theta);

    std::vector<TraceSample> samples(xs.size());
    // anchor at the asymptotic end, where the probe curves bracket the branch
    const double x_anchor = xs.back();
    const double scale = std::pow(x_anchor, theta);
    auto anchor = solver.solve(x_anchor, asymptote.probe_lo * scale, asymptote.probe_hi * scale,
                               asymptote.c_star * scale);
    if (!anchor) anchor = solver.around(x_anchor, asymptote.c_star * scale);
    if (!anchor) throw AsymptoticsError(AsymptoticsError::Kind::BranchLost, "no branch near the asymptote");
    samples.back() = *anchor;

    for (std::size_t k = xs.size() - 1; k-- > 0;) {
        const auto& next = samples[k + 1];
        const double predictor = next.y * std::pow(xs[k] / next.x, theta);
        auto s = solver.around(xs[k], predictor);
        if (!s) throw AsymptoticsError(AsymptoticsError::Kind::BranchLost, "branch lost during continuation", next);
        samples[k] = *s;
    }

    BranchTrace trace;
    trace.theta = asymptote.theta;
    trace.ratio_min = std::numeric_limits<double>::infinity();
    trace.ratio_max = 0.0;
    for (const auto& s : samples) {
        trace.residual_bound = std::max(trace.residual_bound, s.residual);
        const double ratio = std::fabs(s.y) / power_law(s.x, asymptote.theta);
        trace.ratio_min = std::min(trace.ratio_min, ratio);
        trace.ratio_max = std::max(trace.ratio_max, ratio);
    }
    trace.samples = std::move(samples);
    return trace;
}

double fit_exponent(const BranchTrace& trace) {
    const auto n = static_cast<double>(trace.samples.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& s : trace.samples) {
        const double lx = std::log(s.x);
        const double ly = std::log(std::fabs(s.y));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double interpolate_trace(const BranchTrace& trace, double x) {
    const auto& s = trace.samples;
    if (s.empty()) return 0.0;
    if (x <= s.front().x) return s.front().y;
    if (x >= s.back().x) return s.back().y;
    auto it = std::lower_bound(s.begin(), s.end(), x, [](const TraceSample& a, double v) { return a.x < v; });
    const auto& hi = *it;
    const auto& lo = *std::prev(it);
    const double w = (std::log(x) - std::log(lo.x)) / (std::log(hi.x) - std::log(lo.x));
    if (lo.y > 0 && hi.y > 0) return std::exp((1 - w) * std::log(lo.y) + w * std::log(hi.y));
    return (1 - w) * lo.y + w * hi.y;
}

PositiveBranch lowest_positive_branch(const BivariatePolynomial& p, const TraceConfig& cfg) {
    const auto cert = corollary_certificate(p, true);
    if (!cert.satisfied)
        throw AsymptoticsError(AsymptoticsError::Kind::Precondition, "criterion not satisfied; no witness edge");
    const auto base = apply_transform(p, cert.transform_used);
    const OuterEdge& edge = *cert.witness_edge;

    // Half-branches toward x -> +inf first, then x -> -inf via negate_x.
    for (const bool flip_x : {false, true}) {
        const Transform sx{false, flip_x, false};
        const auto candidates = branch_candidates(apply_transform(base, sx), edge);
        const BranchAsymptote* best = nullptr;
        for (const auto& a : candidates)
            if (a.existence == Existence::Confirmed && (!best || std::fabs(a.c_star) < std::fabs(best->c_star))) best = &a;
        if (!best) continue;

        const Transform frame = cert.transform_used.then(Transform{false, flip_x, best->c_star < 0});
        const auto oriented = apply_transform(p, frame);
        const auto in_frame = branch_candidates(oriented, edge);
        const BranchAsymptote* chosen = nullptr;
        for (const auto& a : in_frame)
            if (a.existence == Existence::Confirmed && a.c_star > 0 && (!chosen || a.c_star < chosen->c_star)) chosen = &a;
        if (!chosen) continue;

        PositiveBranch out;
        out.transform = frame;
        out.asymptote = *chosen;
        out.trace = trace_branch(oriented, *chosen, cfg);
        return out;
    }
    throw AsymptoticsError(AsymptoticsError::Kind::NoConfirmedBranch, "every face root on the witness edge is inconclusive");
}

}  // namespace rjm
