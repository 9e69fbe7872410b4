#pragma once

// Real branches at infinity of p = 0: leading-order data read off a right
// outer edge, exact sign probes along y = c x^theta, and numeric continuation
// of the branch graph y = f(x).

#include <optional>
#include <stdexcept>
#include <vector>

#include "rjm/newton_polygon.hpp"
#include "rjm/univariate.hpp"

namespace rjm {

enum class Existence { Confirmed, Inconclusive };

struct SignProbe {
    double x_probe = 0.0;
    double c_minus = 0.0;
    double c_plus = 0.0;
    int sign_minus = 0;
    int sign_plus = 0;
    bool straddles = false;
};

struct BranchAsymptote {
    OuterEdge edge;
    Rational theta;
    /// Isolating interval of the face-polynomial root.
    Rational c_lo;
    Rational c_hi;
    double c_star = 0.0;
    int root_multiplicity = 1;
    Existence existence = Existence::Inconclusive;
    /// Coefficients of the two probe curves bracketing the branch.
    double probe_lo = 0.0;
    double probe_hi = 0.0;
    std::vector<SignProbe> probes;
};

struct TraceSample {
    double x = 0.0;
    double y = 0.0;
    double residual = 0.0;
};

struct BranchTrace {
    std::vector<TraceSample> samples;  // x strictly increasing
    Rational theta;
    double residual_bound = 0.0;
    /// Observed range of |y| / x^theta over the samples.
    double ratio_min = 0.0;
    double ratio_max = 0.0;
};

struct TraceConfig {
    double x_start = 10.0;
    double x_end = 1000.0;
    double growth_factor = 1.1;
    double newton_tol = 1e-12;
    int max_newton_iters = 200;

    void validate() const;
};

class AsymptoticsError : public std::runtime_error {
public:
    enum class Kind { NotRightOuterEdge, NonFiniteEvaluation, NoConvergence, BranchLost, NoConfirmedBranch, Precondition };
    AsymptoticsError(Kind kind, const std::string& what, std::optional<TraceSample> last_good = std::nullopt)
        : std::runtime_error(what), kind_(kind), last_good_(last_good) {}
    Kind kind() const { return kind_; }
    /// Last accepted sample before the failure, when there was one.
    const std::optional<TraceSample>& last_good() const { return last_good_; }

private:
    Kind kind_;
    std::optional<TraceSample> last_good_;
};

/// x values at which existence is probed.
inline constexpr double kProbeSchedule[] = {1e2, 1e4, 1e6};

/// Face polynomial of `edge` as a univariate polynomial in c.
UnivariatePolynomial face_univariate(const BivariatePolynomial& p, const OuterEdge& edge);

/// One asymptote per nonzero real root of the face polynomial.
std::vector<BranchAsymptote> branch_candidates(const BivariatePolynomial& p, const OuterEdge& edge);

/// Signs of p on the curves y = c x^theta for c = c_minus and c = c_plus,
/// evaluated exactly. The probe abscissa is s^k (theta = l/k) with s the
/// integer nearest x_probe^(1/k), so that y = c s^l is rational.
SignProbe sign_probe(const BivariatePolynomial& p, const Rational& theta, double c_minus, double c_plus,
                     double x_probe);

/// Continues the branch graph over [x_start, x_end], anchored at the
/// asymptotic end and marched toward x_start.
BranchTrace trace_branch(const BivariatePolynomial& p, const BranchAsymptote& asymptote, const TraceConfig& cfg);

/// Least-squares slope of log|y| against log x.
double fit_exponent(const BranchTrace& trace);

/// Linear interpolation of the trace in (log x, log|y|); clamps outside the range.
double interpolate_trace(const BranchTrace& trace, double x);

struct PositiveBranch {
    /// Frame in which the branch lies in x > 0, y > 0.
    Transform transform;
    /// Asymptote in that frame.
    BranchAsymptote asymptote;
    BranchTrace trace;
};

/// Lowest positive-quadrant branch associated with the criterion edge.
PositiveBranch lowest_positive_branch(const BivariatePolynomial& p, const TraceConfig& cfg);

}  // namespace rjm
