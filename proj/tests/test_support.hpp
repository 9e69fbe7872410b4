#pragma once

// Seeded generators shared by the property tests.

#include <random>

#include "rjm/parser.hpp"
#include "rjm/polynomial.hpp"

namespace rjm::testing {

inline BivariatePolynomial random_polynomial(std::mt19937_64& rng, int max_terms, int max_exp, int coeff_bound) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> exp(0, max_exp);
    std::uniform_int_distribution<int> coeff(-coeff_bound, coeff_bound);
    std::uniform_int_distribution<int> den(1, 4);
    BivariatePolynomial::TermMap terms;
    const int n = nterms(rng);
    while (static_cast<int>(terms.size()) < n) {
        int c = coeff(rng);
        if (c == 0) c = 1;
        terms[{exp(rng), exp(rng)}] = Rational(c, den(rng));
    }
    for (auto& [e, c] : terms) c.canonicalize();
    return BivariatePolynomial(std::move(terms));
}

inline Rational random_rational(std::mt19937_64& rng, int bound) {
    std::uniform_int_distribution<int> num(-bound * 8, bound * 8);
    std::uniform_int_distribution<int> den(1, 8);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

inline BivariatePolynomial P(const char* text) { return parse_polynomial(text); }

}  // namespace rjm::testing
