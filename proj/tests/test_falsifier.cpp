#include <cmath>

#include "doctest.h"
#include "rjm/falsifier.hpp"
#include "test_support.hpp"

using namespace rjm;
using rjm::testing::P;

namespace {

const char* kCertified[] = {"y + x*y^2 + y^4",  "y + x*y^3",         "y + y^2 + x*y^3",
                            "y + x^2*y^2",      "y + y^3 + x^2*y^2", "y + y^2 + y^3 + x^2*y^2"};

}  // namespace

TEST_CASE("transversal zero for (p1, x)") {
    const auto out = find_jacobian_zero(P("y + x*y^2 + y^4"), P("x"), SearchConfig{});
    REQUIRE(std::holds_alternative<ZeroWitness>(out));
    const auto& w = std::get<ZeroWitness>(out);
    CHECK(w.method == WitnessMethod::SignChangeBisection);
    CHECK(std::fabs(w.jac_value) <= 1e-9);
    // oracle: on 1 + 2xy + 4y^3 = 0 the abscissa is -(1 + 4y^3) / (2y)
    REQUIRE(w.point.y != 0);
    const double x_true = -(1 + 4 * std::pow(w.point.y, 3)) / (2 * w.point.y);
    CHECK(std::fabs(w.point.x - x_true) <= 1e-6);
    CHECK(evaluate(jacobian(P("y + x*y^2 + y^4"), P("x")), Rational(-5, 2), 1) == 0);
}

TEST_CASE("tangential zero for (p1, y)") {
    const auto out = find_jacobian_zero(P("y + x*y^2 + y^4"), P("y"), SearchConfig{});
    REQUIRE(std::holds_alternative<ZeroWitness>(out));
    const auto& w = std::get<ZeroWitness>(out);
    CHECK(w.method == WitnessMethod::LocalMinimization);
    CHECK(std::fabs(w.point.y) <= 1e-3);
    CHECK(w.exact_abs_jac <= 1e-5);
}

TEST_CASE("identity map has no zero") {
    const auto out = find_jacobian_zero(P("x"), P("y"), SearchConfig{});
    REQUIRE(std::holds_alternative<MinRecord>(out));
    const auto& m = std::get<MinRecord>(out);
    CHECK(m.best_abs_jac == 1.0);
    CHECK(m.boxes_searched == 11);
}

TEST_CASE("zero Jacobian is witnessed at the origin") {
    const auto out = find_jacobian_zero(P("x + y"), P("2*x + 2*y"), SearchConfig{});
    REQUIRE(std::holds_alternative<ZeroWitness>(out));
    CHECK(std::get<ZeroWitness>(out).method == WitnessMethod::ExactGridHit);
}

TEST_CASE("config validation") {
    SearchConfig c;
    c.grid_per_axis = 8;
    CHECK_THROWS(find_jacobian_zero(P("x"), P("y"), c));
    c = SearchConfig{};
    c.zero_tol = 0;
    CHECK_THROWS(c.validate());
}

TEST_CASE("antisymmetry and witness validity on random pairs") {
    std::mt19937_64 rng(12);
    SearchConfig cfg;
    cfg.grid_per_axis = 64;
    cfg.max_doublings = 3;
    for (int k = 0; k < 30; ++k) {
        const auto p = rjm::testing::random_polynomial(rng, 5, 3, 4);
        const auto q = rjm::testing::random_polynomial(rng, 5, 3, 4);
        const auto a = find_jacobian_zero(p, q, cfg);
        const auto b = find_jacobian_zero(q, p, cfg);
        REQUIRE(a.index() == b.index());
        if (const auto* wa = std::get_if<ZeroWitness>(&a)) {
            const auto& wb = std::get<ZeroWitness>(b);
            CHECK(std::fabs(std::fabs(wa->jac_value) - std::fabs(wb.jac_value)) <= 1e-12);
            const auto j = jacobian(p, q);
            CHECK(std::fabs(to_double(evaluate(j, Rational(wa->point.x), Rational(wa->point.y)))) <= 10 * cfg.zero_tol);
        } else {
            CHECK(std::get<MinRecord>(a).best_abs_jac > cfg.zero_tol);
        }
    }
}

TEST_CASE("sampler") {
    const auto q = sample_mate(5, 3, 3);
    CHECK(q.total_degree() <= 3);
    for (const auto& [e, c] : q.terms()) CHECK(abs(c) <= 3);
    CHECK(sample_mate(5, 3, 3) == q);
    CHECK(trial_seed(42, 0) != trial_seed(42, 1));
    CHECK(trial_seed(42, 7) == trial_seed(42, 7));
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto m = sample_mate(s, 1, 1);
        CHECK(std::any_of(m.terms().begin(), m.terms().end(), [](const auto& t) { return t.first.j > 0; }));
    }
    CHECK_THROWS(sample_mate(1, 0, 3));
}

TEST_CASE("random trials are reproducible and mostly find witnesses") {
    SearchConfig cfg;
    cfg.rng_seed = 42;
    const auto r1 = random_trials(P("y + x^2*y^2"), 20, 3, 3, cfg);
    const auto r2 = random_trials(P("y + x^2*y^2"), 20, 3, 3, cfg);
    CHECK(r1.certified);
    REQUIRE(r1.trials.size() == 20);
    CHECK(r1.witness_rate >= 0.9);
    for (std::size_t k = 0; k < 20; ++k) {
        CHECK(r1.trials[k].index == k);
        CHECK(r1.trials[k].seed == r2.trials[k].seed);
        CHECK(r1.trials[k].q == r2.trials[k].q);
        REQUIRE(r1.trials[k].outcome.index() == r2.trials[k].outcome.index());
        if (const auto* w = std::get_if<ZeroWitness>(&r1.trials[k].outcome)) {
            const auto& w2 = std::get<ZeroWitness>(r2.trials[k].outcome);
            CHECK(w->point.x == w2.point.x);
            CHECK(w->point.y == w2.point.y);
            CHECK(w->exact_abs_jac <= 1e-5);
        }
    }

    const auto none = random_trials(P("y + x^2*y^2"), 0, 3, 3, cfg);
    CHECK(none.trials.empty());
    CHECK(none.witness_rate == 0);

    const auto plain = random_trials(P("x"), 5, 3, 3, cfg);
    CHECK_FALSE(plain.certified);
    CHECK(plain.trials.size() == 5);
}

TEST_CASE("witness rate on the certified catalogue") {
    SearchConfig cfg;
    for (const char* text : kCertified) {
        CAPTURE(text);
        const auto r = random_trials(P(text), 20, 3, 3, cfg);
        CHECK(r.witness_rate >= 0.9);
    }
}

TEST_CASE("image probe") {
    // x(1 + xy): q = y runs off to infinity on the tongue
    const auto p = P("x*(1 + x*y)");
    const auto region = build_tongue(p);
    const auto grow = image_probe(p, P("y"), region, 2000);
    REQUIRE(grow.sup_by_window.size() == 10);
    CHECK(grow.sup_by_window.back() > 100 * grow.sup_by_window.front());
    CHECK(grow.halfline_variation > 100);

    // p vanishes on the half-line; constants are bounded
    const auto pt = P("y - x^2*y^2");
    const auto normal = make_region(pt, Transform::identity(), false, 1, trace_normal_form(pt, 1, 2000));
    const auto same = image_probe(pt, pt, normal, 1000);
    CHECK(same.halfline_variation == 0);
    CHECK(same.sup_norm_estimate <= 0.25);
    const auto flat = image_probe(pt, P("3"), normal, 1000);
    CHECK(flat.sup_norm_estimate == 3);
    CHECK(flat.halfline_variation == 0);
}
