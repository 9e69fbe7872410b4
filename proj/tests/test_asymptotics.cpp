#include <cmath>

#include "doctest.h"
#include "rjm/asymptotics.hpp"
#include "rjm/compiled.hpp"
#include "test_support.hpp"

using namespace rjm;
using rjm::testing::P;

namespace {

OuterEdge witness(const BivariatePolynomial& p) { return *corollary_certificate(p, false).witness_edge; }

const char* kCatalogue[] = {"y + x*y^2 + y^4",  "y + x*y^3",         "y + y^2 + x*y^3",
                            "y + x^2*y^2",      "y + y^3 + x^2*y^2", "y + y^2 + y^3 + x^2*y^2"};

}  // namespace

TEST_CASE("branch candidates") {
    const auto p3 = branch_candidates(P("y + x^2*y^2"), witness(P("y + x^2*y^2")));
    REQUIRE(p3.size() == 1);
    CHECK(p3[0].theta == -2);
    CHECK(p3[0].c_star == -1.0);
    CHECK(p3[0].existence == Existence::Confirmed);

    const auto p1 = branch_candidates(P("y + x*y^2 + y^4"), witness(P("y + x*y^2 + y^4")));
    REQUIRE(p1.size() == 1);
    CHECK(p1[0].theta == -1);
    CHECK(p1[0].c_star == -1.0);
    CHECK(p1[0].existence == Existence::Confirmed);
    CHECK(p1[0].probes.size() == 3);

    const auto q = P("x^2 + y^2 + 1");
    for (const auto& e : right_outer_edges(newton_polygon(q))) CHECK(branch_candidates(q, e).empty());

    OuterEdge left = witness(P("y + x^2*y^2"));
    left.is_right = false;
    CHECK_THROWS_AS(branch_candidates(P("y + x^2*y^2"), left), AsymptoticsError);
}

TEST_CASE("even multiplicity without a sign change is inconclusive") {
    // (xy - 1)^2 + y^2 > 0 away from its (empty) zero set; face root c = 1 is double
    const auto p = P("(x*y - 1)^2*y");
    for (const auto& e : right_outer_edges(newton_polygon(p))) {
        for (const auto& a : branch_candidates(p, e)) {
            if (a.root_multiplicity % 2 == 0) CHECK(a.existence == Existence::Inconclusive);
        }
    }
}

TEST_CASE("sign probes") {
    const auto s = sign_probe(P("y + x^2*y^2"), -2, -1.5, -0.5, 10);
    CHECK(s.x_probe == 10.0);
    CHECK(s.straddles);
    CHECK(s.sign_minus == 1);   // c(1+c) at c = -3/2
    CHECK(s.sign_plus == -1);   // c(1+c) at c = -1/2
    CHECK(sign_probe(P("y"), Rational(7, 3), -1, 1, 1000).straddles);
    const auto pos = sign_probe(P("x^2 + y^2 + 1"), 1, -1, 1, 100);
    CHECK(pos.sign_minus == 1);
    CHECK(pos.sign_plus == 1);
    CHECK_FALSE(pos.straddles);
    // theta with denominator 2: abscissa is a perfect square
    CHECK(sign_probe(P("y + x*y^3"), Rational(-1, 2), -2, 0.5, 1e4).x_probe == 1e4);
    CHECK_THROWS(sign_probe(P("y"), 0, 1, -1, 10));
    CHECK_THROWS_AS(sign_probe(P("y"), 0, -1, INFINITY, 10), AsymptoticsError);
}

TEST_CASE("corollary curve signs follow A c^a + B") {
    for (const char* text : kCatalogue) {
        const auto p = P(text);
        const auto cert = corollary_certificate(p, false);
        const int a = cert.far_endpoint->i;
        const int b = cert.far_endpoint->j;
        const Rational A = p.coefficient(a, b);
        const Rational B = p.coefficient(0, 1);
        for (int cn : {-7, -3, -1, 1, 3, 7}) {
            const Rational c(cn, 2);
            Rational lead = B;
            Rational ca = 1;
            for (int k = 0; k < a; ++k) ca *= c;
            lead += A * ca;
            if (lead == 0) continue;
            const Rational t = 1000;
            Rational x = c, y = 1;
            for (int k = 0; k < b - 1; ++k) x *= t;
            for (int k = 0; k < a; ++k) y /= t;
            CAPTURE(text);
            CAPTURE(cn);
            CHECK(sgn(evaluate(p, x, y)) == sgn(lead));
        }
    }
}

TEST_CASE("trace of p3 follows y = -1/x^2") {
    const auto p3 = P("y + x^2*y^2");
    const auto a = branch_candidates(p3, witness(p3)).at(0);
    TraceConfig cfg;
    cfg.x_start = 10;
    cfg.x_end = 1000;
    const auto trace = trace_branch(p3, a, cfg);
    REQUIRE(trace.samples.size() > 10);
    for (std::size_t k = 0; k < trace.samples.size(); ++k) {
        const auto& s = trace.samples[k];
        if (k > 0) CHECK(s.x > trace.samples[k - 1].x);
        const double exact = -1.0 / (s.x * s.x);
        CHECK(std::fabs(s.y - exact) <= 1e-8 * std::fabs(exact));
    }
    CHECK(trace.samples.front().x == 10.0);
    CHECK(trace.samples.back().x == 1000.0);
    CHECK(std::fabs(fit_exponent(trace) - (-2.0)) <= 0.02);
}

TEST_CASE("trace of p1 against exact root isolation") {
    const auto p1 = P("y + x*y^2 + y^4");
    const auto a = branch_candidates(p1, witness(p1)).at(0);
    TraceConfig cfg;
    const auto trace = trace_branch(p1, a, cfg);
    const CompiledPolynomial f(p1);
    for (const auto& s : trace.samples) {
        CHECK(std::fabs(f(s.x, s.y)) <= 1e-10 * f.term_scale(s.x, s.y));
        const double ratio = s.y * s.x;
        CHECK(ratio >= -1.2);
        CHECK(ratio <= -0.8);
        // oracle: the unique root of p1(x, .) in [-1.2/x, -0.8/x]
        const auto h = UnivariatePolynomial::restrict_x(p1, Rational(s.x));
        const auto roots = isolate_roots(h, Rational(-1.2 / s.x), Rational(-0.8 / s.x), Rational(1, 1L << 62) / (1L << 20));
        REQUIRE(roots.size() == 1);
        CHECK(std::fabs(roots[0].approx - s.y) <= 1e-10 * std::fabs(s.y));
    }
    CHECK(trace.ratio_min >= 0.8);
    CHECK(trace.ratio_max <= 1.2);
}

TEST_CASE("fabricated asymptote is lost") {
    const auto p3 = P("y + x^2*y^2");
    auto a = branch_candidates(p3, witness(p3)).at(0);
    a.c_star = 1.0;
    a.probe_lo = 0.75;
    a.probe_hi = 1.25;
    try {
        (void)trace_branch(p3, a, TraceConfig{});
        FAIL("expected failure");
    } catch (const AsymptoticsError& e) {
        CHECK((e.kind() == AsymptoticsError::Kind::BranchLost || e.kind() == AsymptoticsError::Kind::NoConvergence));
    }
    a.existence = Existence::Inconclusive;
    CHECK_THROWS_AS(trace_branch(p3, a, TraceConfig{}), AsymptoticsError);
}

TEST_CASE("trace config validation") {
    TraceConfig cfg;
    cfg.x_start = 0.5;
    CHECK_THROWS(cfg.validate());
    cfg = TraceConfig{};
    cfg.growth_factor = 1.0;
    CHECK_THROWS(cfg.validate());
}

TEST_CASE("lowest positive branch") {
    TraceConfig cfg;
    cfg.x_start = 1;
    cfg.x_end = 100;
    const auto b3 = lowest_positive_branch(P("y + x^2*y^2"), cfg);
    CHECK(b3.transform == Transform{false, false, true});
    for (const auto& s : b3.trace.samples) CHECK(s.y == doctest::Approx(1.0 / (s.x * s.x)).epsilon(1e-10));

    const auto b1 = lowest_positive_branch(P("y + x*y^2 + y^4"), cfg);
    CHECK(b1.transform == Transform{false, false, true});
    for (const auto& s : b1.trace.samples) CHECK(s.y > 0);
    CHECK(b1.trace.samples.back().y * 100 == doctest::Approx(1.0).epsilon(1e-3));

    const auto bx = lowest_positive_branch(P("x*(1 + x*y)"), cfg);
    CHECK(bx.transform == Transform::swap().then(Transform{false, false, true}));

    CHECK_THROWS_AS(lowest_positive_branch(P("x^2 + y^2"), cfg), AsymptoticsError);
}

TEST_CASE("edge association and asymptotic law on the catalogue") {
    TraceConfig cfg;
    for (const char* text : kCatalogue) {
        CAPTURE(text);
        const auto p = P(text);
        const auto right = right_outer_edges(newton_polygon(p));
        for (const auto& e : right) {
            for (const auto& a : branch_candidates(p, e)) {
                if (a.existence != Existence::Confirmed) continue;
                const auto trace = trace_branch(p, a, cfg);
                const double fitted = fit_exponent(trace);
                int matches = 0;
                for (const auto& other : right)
                    if (std::fabs(fitted - to_double(*other.slope)) <= 0.02) ++matches;
                CHECK(matches == 1);
                CHECK(std::fabs(fitted - to_double(a.theta)) <= 0.02);
                CHECK(trace.ratio_min > 0);
                CHECK(std::isfinite(trace.ratio_max));
            }
        }
    }
}

TEST_CASE("positive-quadrant graphs are ordered") {
    TraceConfig cfg;
    for (const char* text : {"(x*y - 1)*(x*y - 2)", "(x*y - 1)*(y - 1)", "(x^2*y - 1)*(x*y - 3)*(y - 2)"}) {
        CAPTURE(text);
        const auto p = P(text);
        std::vector<BranchTrace> traces;
        for (const auto& e : right_outer_edges(newton_polygon(p)))
            for (const auto& a : branch_candidates(p, e))
                if (a.existence == Existence::Confirmed && a.c_star > 0) traces.push_back(trace_branch(p, a, cfg));
        REQUIRE(traces.size() >= 2);
        std::sort(traces.begin(), traces.end(),
                  [](const BranchTrace& l, const BranchTrace& r) { return l.samples[0].y < r.samples[0].y; });
        for (std::size_t k = 1; k < traces.size(); ++k) {
            CHECK(traces[k - 1].theta <= traces[k].theta);
            for (std::size_t s = 0; s < traces[k].samples.size(); ++s)
                CHECK(traces[k - 1].samples[s].y < traces[k].samples[s].y);
        }
    }
}
