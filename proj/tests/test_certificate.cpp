#include <regex>

#include "doctest.h"
#include "rjm/certificate.hpp"
#include "rjm/svg.hpp"
#include "test_support.hpp"

using namespace rjm;
using rjm::testing::P;

namespace {

TongueCertificate failed_tongue(const CriterionCertificate& c) {
    TongueCertificate t;
    t.criterion = c;
    t.status = TongueStatus::Failed;
    t.reasons = {"closed loop"};
    return t;
}

}  // namespace

TEST_CASE("conclusion follows criterion and tongue status") {
    const auto yes = corollary_certificate(P("y + x*y^2 + y^4"));
    const auto no = corollary_certificate(P("x^2 + y^2"));
    CHECK(derive_conclusion(yes, nullptr) == Conclusion::NoRealJacobianMate);
    CHECK(derive_conclusion(no, nullptr) == Conclusion::NotCovered);
    auto t = failed_tongue(yes);
    CHECK(derive_conclusion(yes, &t) == Conclusion::Inconclusive);
    t.status = TongueStatus::Inconclusive;
    CHECK(derive_conclusion(yes, &t) == Conclusion::NoRealJacobianMate);
    t.status = TongueStatus::Verified;
    CHECK(derive_conclusion(yes, &t) == Conclusion::NoRealJacobianMate);
}

TEST_CASE("inconsistent documents are rejected") {
    const auto no = corollary_certificate(P("x^2 + y^2"));
    CHECK_THROWS_AS(CertificateDocument("x^2 + y^2", no, std::nullopt, std::nullopt, Conclusion::NoRealJacobianMate),
                    std::invalid_argument);
    const auto yes = corollary_certificate(P("y + x^2*y^2"));
    CHECK_THROWS_AS(
        CertificateDocument("x^2*y^2 + y", yes, failed_tongue(yes), std::nullopt, Conclusion::NoRealJacobianMate),
        std::invalid_argument);
    CHECK_NOTHROW(CertificateDocument("x^2*y^2 + y", yes, failed_tongue(yes), std::nullopt, Conclusion::Inconclusive));
    CHECK_THROWS(CertificateDocument("x^2 + y^2", no, failed_tongue(no), std::nullopt, Conclusion::NotCovered));

    // the deriving constructor drops a tongue the criterion cannot support
    const CertificateDocument d("x^2 + y^2", no, failed_tongue(no), std::nullopt);
    CHECK_FALSE(d.tongue().has_value());
    CHECK(d.conclusion() == Conclusion::NotCovered);
}

TEST_CASE("p1 document") {
    const auto p = P("y + x*y^2 + y^4");
    const CertificateDocument doc(p.to_string(), corollary_certificate(p), std::nullopt, std::nullopt);
    const auto text = emit_certificate_json(doc);
    const auto j = Json::parse(text);
    CHECK(j["witness_edge"].is_null());
    CHECK(j["criterion"]["witness_edge"]["from"] == Json::array({0, 1}));
    CHECK(j["criterion"]["witness_edge"]["to"] == Json::array({1, 2}));
    CHECK(j["criterion"]["witness_edge"]["slope"] == "-1");
    CHECK(j["conclusion"] == "NO_REAL_JACOBIAN_MATE");
    CHECK(j["summary"] == "x*y^2 + y^4 + y has no real Jacobian mate");
    CHECK(doc.tool_version() == kToolVersion);

    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"tool_version", "input", "criterion", "conclusion", "summary"});
    CHECK(text.back() == '\n');
    CHECK(j.dump(2) + "\n" == text);
}

TEST_CASE("not covered document has no tongue key") {
    const auto p = P("x^2 + y^2");
    const CertificateDocument doc(p.to_string(), corollary_certificate(p), std::nullopt, std::nullopt);
    const auto j = Json::parse(emit_certificate_json(doc));
    CHECK_FALSE(j.contains("tongue"));
    CHECK(j["conclusion"] == "NOT_COVERED");
    CHECK_FALSE(j["criterion"].contains("witness_edge"));
}

TEST_CASE("criterion round trip") {
    for (const char* text : {"y + x*y^2 + y^4", "y + y^2 + x*y^3", "x*(1 + x*y)", "x + x^2*y", "x^2 + y^2", "y"}) {
        CAPTURE(text);
        const auto c = corollary_certificate(P(text));
        const auto back = criterion_from_json(Json::parse(to_json(c).dump()));
        CHECK(back.satisfied == c.satisfied);
        CHECK(back.transform_used == c.transform_used);
        CHECK(back.witness_edge == c.witness_edge);
        CHECK(back.far_endpoint == c.far_endpoint);
        CHECK(back.theta == c.theta);
        if (c.satisfied) CHECK(back.primitive_check == c.primitive_check);
        CHECK(to_json(back) == to_json(c));
    }
    CHECK_THROWS(criterion_from_json(Json::parse(R"({"satisfied":false,"transform_used":"twist"})")));
}

TEST_CASE("full document round trips through a reader byte for byte") {
    const auto p = P("y + x^2*y^2");
    TongueConfig cfg;
    cfg.grid.nx = cfg.grid.ny = 120;
    SearchConfig sc;
    sc.rng_seed = 3;
    const CertificateDocument doc(p.to_string(), corollary_certificate(p), tongue_certificate(p, cfg),
                                  random_trials(p, 3, 3, 3, sc));
    const auto text = emit_certificate_json(doc);
    const auto j = Json::parse(text);
    CHECK(j.dump(2) + "\n" == text);
    CHECK(j["tongue"]["status"] == "Verified");
    CHECK(j["tongue"]["profile"]["t0"] == "1/8");
    CHECK(j["tongue"]["levels"]["records"].size() == 30);
    CHECK_FALSE(j["tongue"]["levels"]["records"][0].contains("polylines"));
    CHECK(j["falsifier_trials"].size() == 3);
    CHECK(j["falsifier_trials"][0]["seed"] == trial_seed(3, 0));
}

TEST_CASE("polygon svg") {
    const auto p = P("y + x*y^2 + y^4");
    const auto cert = corollary_certificate(p);
    const auto svg = render_polygon_svg(newton_polygon(p), &cert);
    CHECK(svg == render_polygon_svg(newton_polygon(p), &cert));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>\n") == svg.size() - 7);
    // (0,1) -> (36, h - 60), (1,2) -> (60, h - 84) with h = 72 + 4 * 24
    CHECK(svg.find("<line x1=\"36.00\" y1=\"108.00\" x2=\"60.00\" y2=\"84.00\" class=\"witness\"") != std::string::npos);
    CHECK(svg.find("&#952; = -1") != std::string::npos);

    const std::regex dot("class=\"support\"");
    CHECK(std::distance(std::sregex_iterator(svg.begin(), svg.end(), dot), std::sregex_iterator()) == 3);
}

TEST_CASE("svg of the swapped witness uses original coordinates") {
    const auto p = P("x*(1 + x*y)");
    const auto cert = corollary_certificate(p);
    REQUIRE(cert.transform_used.swap_xy);
    const auto svg = render_polygon_svg(newton_polygon(p), &cert);
    // original edge (1,0)-(2,1); h = 72 + 24
    CHECK(svg.find("<line x1=\"60.00\" y1=\"60.00\" x2=\"84.00\" y2=\"36.00\" class=\"witness\"") != std::string::npos);
}

TEST_CASE("right edges of the four-edge fixture") {
    const auto p = P("x + x^2 + x^3*y + y^2 + x^3*y^2 + x*y^3");
    const auto svg = render_polygon_svg(newton_polygon(p));
    const std::regex right("class=\"right-edge\"");
    CHECK(std::distance(std::sregex_iterator(svg.begin(), svg.end(), right), std::sregex_iterator()) == 3);
    CHECK(svg.find("witness") == std::string::npos);
}

TEST_CASE("single vertex polygon is dots only") {
    const auto svg = render_polygon_svg(newton_polygon(P("x^2*y")));
    CHECK(svg.find("class=\"support\"") != std::string::npos);
    CHECK(svg.find("hull") == std::string::npos);
    CHECK(svg.find("right-edge") == std::string::npos);
}

TEST_CASE("tongue svg") {
    const auto p = P("y + x^2*y^2");
    TongueConfig cfg;
    cfg.x_max = 50;
    const auto region = build_tongue(p, cfg);
    GridSpec grid;
    grid.nx = grid.ny = 200;
    grid.x_max = 50;
    const auto levels = check_level_sets(region.normalized, region, default_levels(region.profile), grid);

    const auto bare = render_tongue_svg(region, LevelSetReport{});
    CHECK(bare.find("class=\"boundary\"") != std::string::npos);
    CHECK(bare.find("class=\"level\"") == std::string::npos);
    CHECK(bare.find("log x") == std::string::npos);

    const auto full = render_tongue_svg(region, levels);
    CHECK(full == render_tongue_svg(region, levels));
    CHECK(full.find("class=\"b-outline\"") != std::string::npos);
    const std::regex level("class=\"level\"");
    CHECK(std::distance(std::sregex_iterator(full.begin(), full.end(), level), std::sregex_iterator()) >= 20);

    // boundary at x = 2 is 1/4 of the way up from y = 0 to f(1) in the frame
    const double f2 = BoundaryCurve(region)(2.0);
    CHECK(f2 == doctest::Approx(0.25).epsilon(1e-9));

    const auto wide = build_tongue(p);
    CHECK(wide.x_max / 1.0 > 100);
    CHECK(render_tongue_svg(wide, LevelSetReport{}).find("(log x)") != std::string::npos);
}
