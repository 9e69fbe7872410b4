#pragma once

// Data-parallel grid kernels. Each OpenMP kernel has a serial reference that
// must produce bit-identical results; tests compare the two and bench/
// measures the speedup.

#include <cstddef>
#include <span>
#include <vector>

#include "rjm/compiled.hpp"

namespace rjm::kernels {

/// Values of f on the tensor grid, row major: out[iy * xs.size() + ix].
void evaluate_grid(const CompiledPolynomial& f, std::span<const double> xs, std::span<const double> ys,
                   std::span<double> out);
void evaluate_grid_serial(const CompiledPolynomial& f, std::span<const double> xs, std::span<const double> ys,
                          std::span<double> out);

struct ArgMin {
    std::size_t index = 0;
    double value = 0.0;  // |v| at index
};

/// Smallest |v| over finite entries, ties broken by lowest index. Returns
/// index == values.size() if there is no finite entry.
ArgMin argmin_abs(std::span<const double> values);
ArgMin argmin_abs_serial(std::span<const double> values);

/// Number of adjacent (horizontal or vertical) grid pairs whose values have
/// strictly opposite signs.
std::size_t count_sign_changes(std::span<const double> values, std::size_t nx, std::size_t ny);
std::size_t count_sign_changes_serial(std::span<const double> values, std::size_t nx, std::size_t ny);

/// Evenly spaced nodes, inclusive of both ends.
std::vector<double> linspace(double lo, double hi, std::size_t n);
/// Geometrically spaced nodes, inclusive of both ends (lo > 0).
std::vector<double> geomspace(double lo, double hi, std::size_t n);

}  // namespace rjm::kernels
