#include "rjm/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rjm::kernels {

namespace {

void check_shape(std::span<const double> xs, std::span<const double> ys, std::span<double> out) {
    if (out.size() != xs.size() * ys.size()) throw std::invalid_argument("grid output has the wrong size");
}

bool better(double v, std::size_t idx, const ArgMin& cur) {
    return v < cur.value || (v == cur.value && idx < cur.index);
}

}  // namespace

void evaluate_grid(const CompiledPolynomial& f, std::span<const double> xs, std::span<const double> ys,
                   std::span<double> out) {
    check_shape(xs, ys, out);
    const auto nx = static_cast<std::ptrdiff_t>(xs.size());
    const auto ny = static_cast<std::ptrdiff_t>(ys.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t iy = 0; iy < ny; ++iy)
        for (std::ptrdiff_t ix = 0; ix < nx; ++ix) out[static_cast<std::size_t>(iy * nx + ix)] = f(xs[ix], ys[iy]);
}

void evaluate_grid_serial(const CompiledPolynomial& f, std::span<const double> xs, std::span<const double> ys,
                          std::span<double> out) {
    check_shape(xs, ys, out);
    for (std::size_t iy = 0; iy < ys.size(); ++iy)
        for (std::size_t ix = 0; ix < xs.size(); ++ix) out[iy * xs.size() + ix] = f(xs[ix], ys[iy]);
}

ArgMin argmin_abs(std::span<const double> values) {
    ArgMin best{values.size(), std::numeric_limits<double>::infinity()};
    const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel
    {
        ArgMin local{values.size(), std::numeric_limits<double>::infinity()};
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t k = 0; k < n; ++k) {
            const double v = std::fabs(values[static_cast<std::size_t>(k)]);
            if (std::isfinite(v) && better(v, static_cast<std::size_t>(k), local))
                local = {static_cast<std::size_t>(k), v};
        }
#pragma omp critical
        if (local.index < values.size() && better(local.value, local.index, best)) best = local;
    }
    if (best.index == values.size()) best.value = std::numeric_limits<double>::infinity();
    return best;
}

ArgMin argmin_abs_serial(std::span<const double> values) {
    ArgMin best{values.size(), std::numeric_limits<double>::infinity()};
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double v = std::fabs(values[k]);
        if (std::isfinite(v) && better(v, k, best)) best = {k, v};
    }
    return best;
}

std::size_t count_sign_changes(std::span<const double> values, std::size_t nx, std::size_t ny) {
    if (values.size() != nx * ny) throw std::invalid_argument("grid has the wrong size");
    std::size_t total = 0;
    const auto rows = static_cast<std::ptrdiff_t>(ny);
#pragma omp parallel for schedule(static) reduction(+ : total)
    for (std::ptrdiff_t iy = 0; iy < rows; ++iy) {
        const std::size_t r = static_cast<std::size_t>(iy);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double v = values[r * nx + ix];
            if (ix + 1 < nx && v * values[r * nx + ix + 1] < 0) ++total;
            if (r + 1 < ny && v * values[(r + 1) * nx + ix] < 0) ++total;
        }
    }
    return total;
}

std::size_t count_sign_changes_serial(std::span<const double> values, std::size_t nx, std::size_t ny) {
    if (values.size() != nx * ny) throw std::invalid_argument("grid has the wrong size");
    std::size_t total = 0;
    for (std::size_t r = 0; r < ny; ++r)
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double v = values[r * nx + ix];
            if (ix + 1 < nx && v * values[r * nx + ix + 1] < 0) ++total;
            if (r + 1 < ny && v * values[(r + 1) * nx + ix] < 0) ++total;
        }
    return total;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (std::size_t k = 0; k < n; ++k) v[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    if (n > 0) v.back() = hi;
    return v;
}

std::vector<double> geomspace(double lo, double hi, std::size_t n) {
    if (!(lo > 0) || !(hi > 0)) throw std::invalid_argument("geomspace needs positive bounds");
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    const double ratio = std::log(hi / lo);
    for (std::size_t k = 0; k < n; ++k)
        v[k] = lo * std::exp(ratio * static_cast<double>(k) / static_cast<double>(n - 1));
    if (n > 0) {
        v.front() = lo;
        v.back() = hi;
    }
    return v;
}

}  // namespace rjm::kernels
