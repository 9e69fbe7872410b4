#include "rjm/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rjm {

// ---------------------------------------------------------------------------
// Transform

std::array<int, 4> Transform::matrix() const {
    const int sx = negate_x ? -1 : 1;
    const int sy = negate_y ? -1 : 1;
    if (swap_xy) return {0, sx, sy, 0};
    return {sx, 0, 0, sy};
}

Transform Transform::from_matrix(const std::array<int, 4>& m) {
    Transform t;
    if (m[0] == 0) {
        t.swap_xy = true;
        t.negate_x = m[1] < 0;
        t.negate_y = m[2] < 0;
    } else {
        t.negate_x = m[0] < 0;
        t.negate_y = m[3] < 0;
    }
    return t;
}

Transform Transform::then(const Transform& next) const {
    // apply(apply(p, a), b)(v) = p(Ma Mb v)
    const auto a = matrix();
    const auto b = next.matrix();
    return from_matrix({a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                        a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]});
}

Transform Transform::inverse() const {
    // signed permutation matrices are orthogonal
    const auto m = matrix();
    return from_matrix({m[0], m[2], m[1], m[3]});
}

std::pair<double, double> Transform::to_original(double x, double y) const {
    const auto m = matrix();
    return {m[0] * x + m[1] * y, m[2] * x + m[3] * y};
}

std::string Transform::name() const {
    if (is_identity()) return "identity";
    std::string out;
    auto add = [&](const char* s) {
        if (!out.empty()) out += "+";
        out += s;
    };
    if (swap_xy) add("swap");
    if (negate_x) add("negate_x");
    if (negate_y) add("negate_y");
    return out;
}

std::array<Transform, 8> all_transforms() {
    std::array<Transform, 8> out;
    for (int k = 0; k < 8; ++k) out[k] = Transform{(k & 4) != 0, (k & 1) != 0, (k & 2) != 0};
    return out;
}

// ---------------------------------------------------------------------------
// BivariatePolynomial

BivariatePolynomial::BivariatePolynomial(TermMap terms) {
    for (auto& [e, c] : terms) {
        if (e.i < 0 || e.j < 0) throw std::invalid_argument("negative exponent");
        if (c != 0) terms_.emplace(e, c);
    }
}

BivariatePolynomial BivariatePolynomial::constant(const Rational& c) { return monomial(c, 0, 0); }

BivariatePolynomial BivariatePolynomial::monomial(const Rational& c, int i, int j) {
    BivariatePolynomial p;
    p.add_term({i, j}, c);
    return p;
}

BivariatePolynomial BivariatePolynomial::variable(Variable v) {
    return v == Variable::X ? monomial(1, 1, 0) : monomial(1, 0, 1);
}

void BivariatePolynomial::add_term(const LatticePoint& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational BivariatePolynomial::coefficient(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? Rational(0) : it->second;
}

int BivariatePolynomial::degree_x() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.i);
    return d;
}

int BivariatePolynomial::degree_y() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.j);
    return d;
}

int BivariatePolynomial::total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.i + e.j);
    return d;
}

BivariatePolynomial BivariatePolynomial::operator-() const {
    BivariatePolynomial r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

BivariatePolynomial& BivariatePolynomial::operator+=(const BivariatePolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

BivariatePolynomial& BivariatePolynomial::operator-=(const BivariatePolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

BivariatePolynomial& BivariatePolynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
    BivariatePolynomial r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term({ea.i + eb.i, ea.j + eb.j}, ca * cb);
    return r;
}

BivariatePolynomial BivariatePolynomial::pow(unsigned e) const {
    BivariatePolynomial result = constant(1);
    BivariatePolynomial base = *this;
    while (e > 0) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return result;
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::string BivariatePolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;

        std::string body;
        auto append = [&](const std::string& f) {
            if (!body.empty()) body += "*";
            body += f;
        };
        const bool unit = mag == 1;
        if (!unit || (e.i == 0 && e.j == 0)) append(mag.get_str());
        if (e.i == 1) append("x");
        else if (e.i > 1) append("x^" + std::to_string(e.i));
        if (e.j == 1) append("y");
        else if (e.j > 1) append("y^" + std::to_string(e.j));
        os << body;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Evaluation and calculus

namespace {

Rational rational_pow(const Rational& base, int e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    r.canonicalize();
    return r;
}

}  // namespace

Rational evaluate(const BivariatePolynomial& p, const Rational& x, const Rational& y) {
    Rational sum = 0;
    for (const auto& [e, c] : p.terms()) sum += c * rational_pow(x, e.i) * rational_pow(y, e.j);
    return sum;
}

double to_double(const Rational& r) {
    // mpq_get_d truncates; for ordinary magnitudes this is within one ulp
    return mpq_get_d(r.get_mpq_t());
}

BivariatePolynomial partial_derivative(const BivariatePolynomial& p, Variable v) {
    BivariatePolynomial::TermMap out;
    for (const auto& [e, c] : p.terms()) {
        if (v == Variable::X && e.i > 0) out[{e.i - 1, e.j}] += c * e.i;
        if (v == Variable::Y && e.j > 0) out[{e.i, e.j - 1}] += c * e.j;
    }
    return BivariatePolynomial(std::move(out));
}

BivariatePolynomial jacobian(const BivariatePolynomial& p, const BivariatePolynomial& q) {
    return partial_derivative(p, Variable::X) * partial_derivative(q, Variable::Y) -
           partial_derivative(p, Variable::Y) * partial_derivative(q, Variable::X);
}

BivariatePolynomial apply_transform(const BivariatePolynomial& p, const Transform& t) {
    BivariatePolynomial::TermMap out;
    for (const auto& [e, c] : p.terms()) {
        const bool flip = (t.negate_x && (e.i % 2 != 0)) != (t.negate_y && (e.j % 2 != 0));
        const LatticePoint image = t.swap_xy ? LatticePoint{e.j, e.i} : e;
        out[image] = flip ? Rational(-c) : c;
    }
    return BivariatePolynomial(std::move(out));
}

BivariatePolynomial subtract_constant(const BivariatePolynomial& p, const Rational& t) {
    return p - BivariatePolynomial::constant(t);
}

}  // namespace rjm
