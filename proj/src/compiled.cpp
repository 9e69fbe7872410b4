#include "rjm/compiled.hpp"

#include <algorithm>
#include <cmath>

namespace rjm {

namespace {

double ipow(double b, int e) {
    double r = 1.0;
    while (e > 0) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e > 0) b *= b;
    }
    return r;
}

}  // namespace

CompiledPolynomial::CompiledPolynomial(const BivariatePolynomial& p) {
    const auto& terms = p.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        if (rows_.empty() || rows_.back().i != it->first.i) rows_.push_back(Row{it->first.i, {}, {}});
        rows_.back().j.push_back(it->first.j);
        rows_.back().coef.push_back(to_double(it->second));
    }
}

double CompiledPolynomial::operator()(double x, double y) const {
    if (rows_.empty()) return 0.0;
    double acc = 0.0;
    int prev_i = -1;
    for (const auto& row : rows_) {
        double r = row.coef[0];
        for (std::size_t k = 1; k < row.j.size(); ++k) r = r * ipow(y, row.j[k - 1] - row.j[k]) + row.coef[k];
        r *= ipow(y, row.j.back());
        acc = prev_i < 0 ? r : acc * ipow(x, prev_i - row.i) + r;
        prev_i = row.i;
    }
    return acc * ipow(x, prev_i);
}

double CompiledPolynomial::term_scale(double x, double y) const {
    double s = 0.0;
    for (const auto& row : rows_) {
        const double xi = std::fabs(ipow(x, row.i));
        for (std::size_t k = 0; k < row.j.size(); ++k)
            s = std::max(s, std::fabs(row.coef[k]) * xi * std::fabs(ipow(y, row.j[k])));
    }
    return s;
}

CompiledGradient::CompiledGradient(const BivariatePolynomial& p)
    : f(p), fx(partial_derivative(p, Variable::X)), fy(partial_derivative(p, Variable::Y)) {}

ApproxValue evaluate_approx(const BivariatePolynomial& p, double x, double y) {
    const double v = CompiledPolynomial(p)(x, y);
    return {v, std::isfinite(v)};
}

}  // namespace rjm
