#include "rjm/falsifier.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>

#include "rjm/kernels.hpp"

namespace rjm {

void SearchConfig::validate() const {
    if (!(initial_half_width > 0)) throw std::invalid_argument("initial_half_width must be > 0");
    if (max_doublings < 0) throw std::invalid_argument("max_doublings must be >= 0");
    if (grid_per_axis < 16) throw std::invalid_argument("grid_per_axis must be >= 16");
    if (!(zero_tol > 0)) throw std::invalid_argument("zero_tol must be > 0");
}

const char* to_string(WitnessMethod m) {
    switch (m) {
        case WitnessMethod::SignChangeBisection: return "SignChangeBisection";
        case WitnessMethod::LocalMinimization: return "LocalMinimization";
        case WitnessMethod::ExactGridHit: return "ExactGridHit";
    }
    return "?";
}

namespace {

double exact_abs(const BivariatePolynomial& j, const Point& v) {
    return std::fabs(to_double(evaluate(j, Rational(v.x), Rational(v.y))));
}

// Bisection on an axis-parallel segment between two grid points of opposite sign.
Point bisect(const CompiledPolynomial& j, Point a, Point b) {
    double ja = j(a.x, a.y);
    for (int it = 0; it < 200; ++it) {
        const Point m{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
        if ((m.x == a.x && m.y == a.y) || (m.x == b.x && m.y == b.y)) break;
        const double jm = j(m.x, m.y);
        if (jm == 0) return m;
        if ((jm < 0) == (ja < 0)) {
            a = m;
            ja = jm;
        } else {
            b = m;
        }
    }
    return std::fabs(ja) <= std::fabs(j(b.x, b.y)) ? a : b;
}

// Damped Gauss-Newton toward the zero set: v <- v - J grad J / |grad J|^2.
Point descend(const CompiledGradient& g, Point v, double tol) {
    double jv = g.f(v.x, v.y);
    for (int it = 0; it < 500 && std::fabs(jv) > 1e-3 * tol; ++it) {
        const double gx = g.fx(v.x, v.y), gy = g.fy(v.x, v.y);
        const double gg = gx * gx + gy * gy;
        if (!(gg > 0) || !std::isfinite(gg)) break;
        const Point step{-jv * gx / gg, -jv * gy / gg};
        bool moved = false;
        for (double lambda = 1.0; lambda > 1e-10; lambda *= 0.5) {
            const Point c{v.x + lambda * step.x, v.y + lambda * step.y};
            const double jc = g.f(c.x, c.y);
            if (std::fabs(jc) < std::fabs(jv)) {
                v = c;
                jv = jc;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    return v;
}

}  // namespace

SearchOutcome find_jacobian_zero(const BivariatePolynomial& p, const BivariatePolynomial& q, const SearchConfig& cfg) {
    cfg.validate();
    const auto jac = jacobian(p, q);
    if (jac.is_zero()) return ZeroWitness{{0.0, 0.0}, 0.0, 0.0, WitnessMethod::ExactGridHit};

    const CompiledGradient g(jac);
    const auto n = static_cast<std::size_t>(cfg.grid_per_axis);
    auto witness = [&](const Point& v, WitnessMethod m) -> std::optional<ZeroWitness> {
        const double jv = g.f(v.x, v.y);
        if (!(std::fabs(jv) <= cfg.zero_tol)) return std::nullopt;
        const double ex = exact_abs(jac, v);
        if (!(ex <= 10 * cfg.zero_tol)) return std::nullopt;
        return ZeroWitness{v, jv, ex, m};
    };

    MinRecord best{{0.0, 0.0}, std::numeric_limits<double>::infinity(), 0};
    std::vector<double> values(n * n);
    for (int k = 0; k <= cfg.max_doublings; ++k) {
        const double w = std::ldexp(cfg.initial_half_width, k);
        std::vector<double> axis(n);
        for (std::size_t i = 0; i < n; ++i) axis[i] = -w + (static_cast<double>(i) + 0.5) * (2 * w / static_cast<double>(n));
        kernels::evaluate_grid(g.f, axis, axis, values);
        ++best.boxes_searched;
        auto at = [&](std::size_t idx) { return Point{axis[idx % n], axis[idx / n]}; };

        // sign changes between neighbours, most promising first
        struct Pair {
            double key;
            std::size_t a, b;
        };
        std::vector<Pair> pairs;
        for (std::size_t iy = 0; iy < n; ++iy)
            for (std::size_t ix = 0; ix < n; ++ix) {
                const std::size_t a = iy * n + ix;
                for (const std::size_t b : {ix + 1 < n ? a + 1 : a, iy + 1 < n ? a + n : a}) {
                    if (b == a || !(values[a] * values[b] < 0)) continue;
                    pairs.push_back({std::min(std::fabs(values[a]), std::fabs(values[b])), a, b});
                }
            }
        std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& l, const Pair& r) { return l.key < r.key; });
        if (pairs.size() > 64) pairs.resize(64);
        for (const auto& pr : pairs) {
            const Point v = bisect(g.f, at(pr.a), at(pr.b));
            if (auto wz = witness(v, WitnessMethod::SignChangeBisection)) return *wz;
        }

        for (std::size_t idx = 0; idx < values.size(); ++idx) {
            if (values[idx] != 0) continue;
            const Point v = at(idx);
            if (exact_abs(jac, v) == 0) return ZeroWitness{v, 0.0, 0.0, WitnessMethod::ExactGridHit};
        }

        const auto m = kernels::argmin_abs(values);
        if (m.index >= values.size()) continue;
        if (std::fabs(m.value) < best.best_abs_jac) best = {at(m.index), std::fabs(m.value), best.boxes_searched};
        const Point v = descend(g, at(m.index), cfg.zero_tol);
        if (auto wz = witness(v, WitnessMethod::LocalMinimization)) return *wz;
        const double jv = std::fabs(g.f(v.x, v.y));
        if (jv < best.best_abs_jac) best = {v, jv, best.boxes_searched};
    }
    return best;
}

std::uint64_t trial_seed(std::uint64_t base, std::size_t index) {
    // splitmix64 finaliser over the pair
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

BivariatePolynomial sample_mate(std::uint64_t seed, int max_degree, int coeff_bound) {
    if (max_degree < 1 || coeff_bound < 1) throw std::invalid_argument("sampler needs degree >= 1 and bound >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-coeff_bound, coeff_bound);
    BivariatePolynomial::TermMap terms;
    std::vector<LatticePoint> with_y;
    for (int i = 0; i <= max_degree; ++i)
        for (int j = 0; i + j <= max_degree; ++j) {
            const int c = coef(rng);
            if (c != 0) terms[{i, j}] = c;
            if (j > 0) with_y.push_back({i, j});
        }
    const bool has_y = std::any_of(terms.begin(), terms.end(), [](const auto& t) { return t.first.j > 0; });
    if (!has_y) {
        std::uniform_int_distribution<std::size_t> pick(0, with_y.size() - 1);
        std::uniform_int_distribution<int> mag(1, coeff_bound);
        const LatticePoint e = with_y[pick(rng)];
        terms[e] = (rng() & 1) ? mag(rng) : -mag(rng);
    }
    return BivariatePolynomial(std::move(terms));
}

TrialReport random_trials(const BivariatePolynomial& p, std::size_t n, int max_degree, int coeff_bound,
                          const SearchConfig& cfg) {
    cfg.validate();
    TrialReport report;
    report.certified = corollary_certificate(p, true).satisfied;
    report.trials.resize(n);
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < static_cast<long>(n); ++k) {
        try {
            auto& t = report.trials[k];
            t.index = static_cast<std::size_t>(k);
            t.seed = trial_seed(cfg.rng_seed, t.index);
            int attempt = 0;
            for (t.q = sample_mate(t.seed, max_degree, coeff_bound); jacobian(p, t.q).is_zero();
                 t.q = sample_mate(t.seed, max_degree, coeff_bound)) {
                if (++attempt > 10)
                    throw FalsifierError(FalsifierError::Kind::DegenerateSampler,
                                         "every sampled mate has an identically zero Jacobian");
                t.seed = trial_seed(t.seed, static_cast<std::size_t>(attempt));
            }
            t.outcome = find_jacobian_zero(p, t.q, cfg);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (const auto& t : report.trials)
        if (std::holds_alternative<ZeroWitness>(t.outcome)) ++report.witnesses;
    report.witness_rate = n == 0 ? 0.0 : static_cast<double>(report.witnesses) / static_cast<double>(n);
    return report;
}

ImageProbeReport image_probe(const BivariatePolynomial& p, const BivariatePolynomial& q, const TongueRegion& region,
                             std::size_t samples) {
    ImageProbeReport out;
    const BoundaryCurve f(region);
    const CompiledPolynomial cp(p), cq(q);
    const double x0 = to_double(region.x0);
    auto norm_at = [&](double x, double y) {
        const auto [ox, oy] = region.transform.to_original(x, y);
        return std::max(std::fabs(cp(ox, oy)), std::fabs(cq(ox, oy)));
    };

    const std::size_t per_window = std::max<std::size_t>(1, samples / 10);
    unsigned long index = 1;
    for (int k = 1; k <= 10; ++k) {
        const double span = std::ldexp(1.0, k);
        for (std::size_t s = 0; s < per_window; ++s, ++index) {
            const double x = x0 * std::pow(span, halton(index, 2));
            const double y = halton(index, 3) * f(x);
            out.sup_norm_estimate = std::max(out.sup_norm_estimate, norm_at(x, y));
        }
        out.sup_by_window.push_back(out.sup_norm_estimate);
    }

    const double x_end = x0 < 1024.0 ? 1024.0 : 2 * x0;
    const auto [bx, by] = region.transform.to_original(x0, 0.0);
    const double p0 = cp(bx, by), q0 = cq(bx, by);
    for (const double x : kernels::geomspace(x0, x_end, 1025)) {
        const auto [ox, oy] = region.transform.to_original(x, 0.0);
        out.halfline_variation =
            std::max({out.halfline_variation, std::fabs(cp(ox, oy) - p0), std::fabs(cq(ox, oy) - q0)});
    }
    return out;
}

}  // namespace rjm
