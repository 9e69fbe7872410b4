#pragma once

// Searches for the zero of Jac(p, q) that a certified p forces on every
// candidate mate q.

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "rjm/tongue.hpp"

namespace rjm {

struct SearchConfig {
    double initial_half_width = 4.0;
    int max_doublings = 10;
    int grid_per_axis = 256;
    double zero_tol = 1e-6;
    std::uint64_t rng_seed = 0;

    void validate() const;
};

enum class WitnessMethod { SignChangeBisection, LocalMinimization, ExactGridHit };

const char* to_string(WitnessMethod m);

struct ZeroWitness {
    Point point;
    double jac_value = 0.0;
    /// |Jac| evaluated exactly at the point read as a rational.
    double exact_abs_jac = 0.0;
    WitnessMethod method = WitnessMethod::SignChangeBisection;
};

struct MinRecord {
    Point best_point;
    double best_abs_jac = 0.0;
    int boxes_searched = 0;
};

using SearchOutcome = std::variant<ZeroWitness, MinRecord>;

SearchOutcome find_jacobian_zero(const BivariatePolynomial& p, const BivariatePolynomial& q, const SearchConfig& cfg);

class FalsifierError : public std::runtime_error {
public:
    enum class Kind { DegenerateSampler };
    FalsifierError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct TrialOutcome {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    BivariatePolynomial q;
    SearchOutcome outcome;
};

struct TrialReport {
    /// False when p carries no certificate; the trials still run.
    bool certified = false;
    std::vector<TrialOutcome> trials;  // by index
    std::size_t witnesses = 0;
    double witness_rate = 0.0;
};

/// Seed of trial `index`; depends only on the base seed and the index.
std::uint64_t trial_seed(std::uint64_t base, std::size_t index);

/// Candidate mate: integer coefficients in [-bound, bound], total degree
/// <= max_degree, with at least one term involving y.
BivariatePolynomial sample_mate(std::uint64_t seed, int max_degree, int coeff_bound);

TrialReport random_trials(const BivariatePolynomial& p, std::size_t n, int max_degree, int coeff_bound,
                          const SearchConfig& cfg);

struct ImageProbeReport {
    /// Largest max(|p|, |q|) seen on A.
    double sup_norm_estimate = 0.0;
    /// Sup over the nested windows x0 <= x <= x0 2^k, k = 1..10 (frame coordinates).
    std::vector<double> sup_by_window;
    /// Largest change of (p, q) along the half-line y = 0, x in [x0, 2^10].
    double halfline_variation = 0.0;
};

ImageProbeReport image_probe(const BivariatePolynomial& p, const BivariatePolynomial& q, const TongueRegion& region,
                             std::size_t samples);

}  // namespace rjm
