#pragma once

// Safeguarded Newton iteration on a sign-changing bracket.

#include <cmath>
#include <utility>

namespace rjm {

struct BracketedRoot {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Finds a zero of f in [lo, hi] given f(lo) f(hi) < 0. Newton steps from
/// `guess` are accepted while they stay inside the shrinking bracket and
/// otherwise replaced by bisection. Stops when |f| <= tol(x) or the bracket
/// cannot be split any further.
template <class F, class DF, class Tol>
BracketedRoot solve_bracketed(F&& f, DF&& df, double lo, double hi, double guess, Tol&& tol, int max_iters) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0) return {lo, 0.0, 0, true};
    if (fhi == 0) return {hi, 0.0, 0, true};
    if (lo > hi) {
        std::swap(lo, hi);
        std::swap(flo, fhi);
    }
    double x = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
    BracketedRoot r;
    for (int it = 0; it < max_iters; ++it) {
        const double fx = f(x);
        r = {x, fx, it + 1, false};
        if (!std::isfinite(fx)) return r;
        if (std::fabs(fx) <= tol(x)) {
            r.converged = true;
            return r;
        }
        if ((fx < 0) == (flo < 0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) {
            // bracket collapsed to adjacent doubles
            const bool take_lo = std::fabs(flo) <= std::fabs(fhi);
            r = {take_lo ? lo : hi, take_lo ? flo : fhi, it + 1, false};
            r.converged = std::fabs(r.fx) <= tol(r.x);
            return r;
        }
        const double d = df(x);
        double next = mid;
        if (d != 0 && std::isfinite(d)) {
            const double newton = x - fx / d;
            if (newton > lo && newton < hi) next = newton;
        }
        x = next;
    }
    return r;
}

}  // namespace rjm
