#include "rjm/univariate.hpp"

#include <algorithm>
#include <stdexcept>

namespace rjm {

UnivariatePolynomial::UnivariatePolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UnivariatePolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UnivariatePolynomial UnivariatePolynomial::restrict_x(const BivariatePolynomial& p, const Rational& x0) {
    std::vector<Rational> c(static_cast<std::size_t>(p.degree_y()) + 1);
    for (const auto& [e, a] : p.terms()) {
        Rational xp = 1;
        for (int k = 0; k < e.i; ++k) xp *= x0;
        c[static_cast<std::size_t>(e.j)] += a * xp;
    }
    return UnivariatePolynomial(std::move(c));
}

Rational UnivariatePolynomial::operator()(const Rational& t) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double UnivariatePolynomial::approx(double t) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + to_double(*it);
    return acc;
}

UnivariatePolynomial UnivariatePolynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
    return UnivariatePolynomial(std::move(d));
}

UnivariatePolynomial UnivariatePolynomial::monic() const {
    if (c_.empty()) return {};
    std::vector<Rational> m = c_;
    const Rational lead = c_.back();
    for (auto& v : m) v /= lead;
    return UnivariatePolynomial(std::move(m));
}

UnivariatePolynomial UnivariatePolynomial::operator-(const UnivariatePolynomial& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
    for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] -= o.c_[k];
    return UnivariatePolynomial(std::move(r));
}

UnivariatePolynomial UnivariatePolynomial::operator-(const Rational& c) const {
    std::vector<Rational> r = c_;
    if (r.empty()) r.emplace_back(0);
    r[0] -= c;
    return UnivariatePolynomial(std::move(r));
}

std::pair<UnivariatePolynomial, UnivariatePolynomial> UnivariatePolynomial::divmod(
    const UnivariatePolynomial& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    std::vector<Rational> rem = c_;
    if (c_.size() < d.c_.size()) return {UnivariatePolynomial(), *this};
    std::vector<Rational> quot(c_.size() - d.c_.size() + 1);
    const Rational& lead = d.c_.back();
    for (std::size_t k = quot.size(); k-- > 0;) {
        const Rational f = rem[k + d.c_.size() - 1] / lead;
        quot[k] = f;
        if (f == 0) continue;
        for (std::size_t m = 0; m < d.c_.size(); ++m) rem[k + m] -= f * d.c_[m];
    }
    return {UnivariatePolynomial(std::move(quot)), UnivariatePolynomial(std::move(rem))};
}

int UnivariatePolynomial::strip_zero_roots() {
    int k = 0;
    while (!c_.empty() && c_[static_cast<std::size_t>(k)] == 0) ++k;
    if (k > 0) c_.erase(c_.begin(), c_.begin() + k);
    return k;
}

UnivariatePolynomial gcd(UnivariatePolynomial a, UnivariatePolynomial b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

std::vector<UnivariatePolynomial> squarefree_decomposition(const UnivariatePolynomial& p) {
    // Yun's algorithm
    std::vector<UnivariatePolynomial> out;
    if (p.degree() < 1) return out;
    const auto dp = p.derivative();
    auto a = gcd(p, dp);
    auto b = p.divmod(a).first;
    auto c = dp.divmod(a).first;
    auto d = c - b.derivative();
    while (b.degree() >= 1) {
        auto g = gcd(b, d);
        out.push_back(g);
        b = b.divmod(g).first;
        c = d.divmod(g).first;
        d = c - b.derivative();
    }
    return out;
}

SturmSequence::SturmSequence(const UnivariatePolynomial& f) {
    seq_.push_back(f.monic());
    auto next = f.derivative();
    if (next.is_zero()) return;
    seq_.push_back(next.monic());
    while (true) {
        auto r = seq_[seq_.size() - 2].divmod(seq_.back()).second;
        if (r.is_zero()) break;
        // -rem scaled by a positive constant
        const Rational lead = r.leading();
        std::vector<Rational> c = r.coefficients();
        const Rational s = Rational(-1) / abs(lead);
        for (auto& v : c) v *= s;
        seq_.emplace_back(std::move(c));
    }
}

int SturmSequence::variations(const Rational& t) const {
    int changes = 0;
    int prev = 0;
    for (const auto& f : seq_) {
        const int s = f.sign_at(t);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

Rational root_bound(const UnivariatePolynomial& p) {
    Rational m = 0;
    const Rational lead = abs(p.leading());
    for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rational(abs(p.coefficients()[static_cast<std::size_t>(k)]) / lead));
    return m + 1;
}

Rational default_isolation_width() { return Rational(Integer(1), Integer("1000000000000")); }

namespace {

RootInterval exact_root(const SturmSequence& s, const UnivariatePolynomial& f, const Rational& r,
                        const Rational& width, int mult) {
    Rational w = width / 2;
    while (s.count(r - w, r + w) != 1 || f.sign_at(r + w) == 0 || f.sign_at(r - w) == 0) w /= 2;
    RootInterval ri;
    ri.lo = r - w;
    ri.hi = r + w;
    ri.multiplicity = mult;
    ri.exact = true;
    ri.exact_value = r;
    ri.approx = to_double(r);
    return ri;
}

void isolate_squarefree(const UnivariatePolynomial& f, const Rational& lo, const Rational& hi, const Rational& width,
                        int mult, std::vector<RootInterval>& out) {
    const SturmSequence s(f);
    if (f.degree() == 1) {
        const Rational r = -f.coefficients()[0] / f.coefficients()[1];
        if (lo < r && r < hi) out.push_back(exact_root(s, f, r, width, mult));
        return;
    }
    struct Pending {
        Rational a, b;
    };
    std::vector<Pending> stack{{lo, hi}};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        const int n = s.count(a, b);
        if (n == 0) continue;
        const bool b_root = f.sign_at(b) == 0;
        if (n == 1 && b_root) {
            if (b != hi) out.push_back(exact_root(s, f, b, width, mult));
            continue;
        }
        if (n == 1) {
            while (b - a > width) {
                const Rational m = (a + b) / 2;
                if (f.sign_at(m) == 0) {
                    a = m;
                    b = m;
                    break;
                }
                if (s.count(a, m) == 1) b = m;
                else a = m;
            }
            if (a == b) {
                out.push_back(exact_root(s, f, a, width, mult));
            } else {
                RootInterval ri;
                ri.lo = a;
                ri.hi = b;
                ri.multiplicity = mult;
                ri.approx = to_double((a + b) / 2);
                out.push_back(ri);
            }
            continue;
        }
        const Rational m = (a + b) / 2;
        stack.push_back({m, b});
        stack.push_back({a, m});
    }
}

}  // namespace

std::vector<RootInterval> isolate_roots(const UnivariatePolynomial& p, const Rational& lo, const Rational& hi,
                                        const Rational& width) {
    std::vector<RootInterval> out;
    if (p.degree() < 1 || !(lo < hi)) return out;
    const auto factors = squarefree_decomposition(p);
    for (std::size_t k = 0; k < factors.size(); ++k) {
        if (factors[k].degree() < 1) continue;
        isolate_squarefree(factors[k], lo, hi, width, static_cast<int>(k) + 1, out);
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& l, const RootInterval& r) { return l.lo < r.lo; });
    return out;
}

std::vector<RootInterval> isolate_real_roots(const UnivariatePolynomial& p, const Rational& width) {
    if (p.degree() < 1) return {};
    const Rational b = root_bound(p);
    return isolate_roots(p, -b, b, width);
}

}  // namespace rjm
