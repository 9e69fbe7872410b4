#pragma once

// The region V under the lowest positive branch, the tongue A = V plus its
// left segment, and finite-resolution checks of the level-set trichotomy.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rjm/asymptotics.hpp"
#include "rjm/compiled.hpp"

namespace rjm {

class TongueError : public std::runtime_error {
public:
    enum class Kind {
        NotCertified,
        NotSingleSignedOnInterval,
        NoInteriorCriticalPoint,
        NoConfirmedBranch,
        CriticalPointsPersist,
        SignNotConstant,
        ResolutionTooCoarse,
    };
    TongueError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Grid over [x0, x_max] x [0, y_max]; nx and ny count nodes. Unset bounds
/// default to the region's horizon and the largest boundary value.
struct GridSpec {
    int nx = 1000;
    int ny = 1000;
    std::optional<double> x_max;
    std::optional<double> y_max;
};

struct RestrictionProfile {
    Rational x0;
    double f_x0 = 0.0;
    Rational t0;
    double a = 0.0;
    double b = 0.0;
    std::vector<double> critical_points_of_h;
    /// Largest value of h on (0, f_x0), attained at one of the critical points.
    double h_max = 0.0;
};

struct TongueRegion {
    /// Frame mapping the original polynomial to `normalized` (up to sign).
    Transform transform;
    bool sign_flipped = false;
    /// The polynomial in the frame, positive on V.
    BivariatePolynomial normalized;
    Rational x0;
    /// Verification horizon; the boundary trace covers [x0, x_max].
    double x_max = 0.0;
    BranchTrace boundary_trace;
    RestrictionProfile profile;
};

/// f(x): the boundary root of normalized(x, .) next to the interpolated trace.
class BoundaryCurve {
public:
    explicit BoundaryCurve(const TongueRegion& region);
    double operator()(double x) const;

private:
    const TongueRegion& region_;
    CompiledGradient g_;
};

double boundary_at(const TongueRegion& region, double x);

/// Exact analysis of h(y) = p(x0, y) on (0, f_x0).
RestrictionProfile restriction_profile(const BivariatePolynomial& p, const Rational& x0, double f_x0);

/// Region for a polynomial already in normal form, with a given boundary trace.
TongueRegion make_region(const BivariatePolynomial& normalized, const Transform& transform, bool sign_flipped,
                         const Rational& x0, BranchTrace boundary_trace);

/// Traces the smallest positive branch on the criterion edge of a
/// normal-form polynomial over [x0, x_max].
BranchTrace trace_normal_form(const BivariatePolynomial& normalized, double x0, double x_max);

struct TongueConfig {
    Rational x0 = 1;
    /// Doubling budget for x0.
    Rational max_x0 = Rational(1 << 20);
    /// Unset: max(50, x where the asymptote drops below 1e-6).
    std::optional<double> x_max;
    GridSpec grid;
    /// Columns of the critical-point scan; coarser than the level grid is enough.
    int critical_columns = 400;
};

TongueRegion build_tongue(const BivariatePolynomial& p, const TongueConfig& cfg = {});

struct CriticalPointReport {
    bool passed = true;
    /// Empty grid (x_max < x0); passes vacuously.
    bool degenerate = false;
    int columns_checked = 0;
    /// Smallest |grad p| over the interior grid nodes.
    double min_gradient_norm = 0.0;
    std::vector<Point> witnesses;
};

CriticalPointReport check_no_critical_points(const BivariatePolynomial& p, const TongueRegion& region,
                                             const GridSpec& grid);

enum class LevelClass { Empty, SegmentWithBoundaryEndpoints, ContainedInB, Irregular };

const char* to_string(LevelClass c);

struct LevelRecord {
    Rational t;
    LevelClass classification = LevelClass::Empty;
    int component_count = 0;
    /// Polyline ends on the segment {x0} x (0, f(x0)).
    int boundary_endpoint_count = 0;
    /// Sign changes of h - t on that segment, by exact isolation.
    int expected_endpoint_count = 0;
    /// Ends on the truncation line x = x_max.
    int truncation_hits = 0;
    /// Ends anywhere else: next to the curved boundary or off the grid.
    int escapes = 0;
    bool closed_loop_detected = false;
    bool passed = false;
    std::vector<std::vector<Point>> polylines;
};

struct LevelSetReport {
    std::vector<LevelRecord> levels;  // sorted by t
    /// Closed outline of B: the t0 arc and the segment [a, b] on x = x0.
    std::vector<Point> b_outline;
    bool passed = false;
};

/// Default schedule: 20 values in (0, t0], 5 values <= 0, 5 values > t0.
std::vector<Rational> default_levels(const RestrictionProfile& profile);

LevelSetReport check_level_sets(const BivariatePolynomial& p, const TongueRegion& region,
                                const std::vector<Rational>& t_values, const GridSpec& grid);

enum class TongueStatus { Verified, Inconclusive, Failed };

const char* to_string(TongueStatus s);

struct TongueCertificate {
    CriterionCertificate criterion;
    std::optional<TongueRegion> region;
    std::optional<CriticalPointReport> critical_points;
    std::optional<LevelSetReport> levels;
    TongueStatus status = TongueStatus::Failed;
    std::vector<std::string> reasons;
};

TongueCertificate tongue_certificate(const BivariatePolynomial& p, const TongueConfig& cfg = {});

/// Halton low-discrepancy sequence in the given prime base, index >= 1.
double halton(unsigned long index, unsigned base);

}  // namespace rjm
