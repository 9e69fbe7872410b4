#include "rjm/certificate.hpp"

#include <stdexcept>

namespace rjm {

const char* to_string(Conclusion c) {
    switch (c) {
        case Conclusion::NoRealJacobianMate: return "NO_REAL_JACOBIAN_MATE";
        case Conclusion::Inconclusive: return "INCONCLUSIVE";
        case Conclusion::NotCovered: return "NOT_COVERED";
    }
    return "?";
}

Conclusion derive_conclusion(const CriterionCertificate& criterion, const TongueCertificate* tongue) {
    if (!criterion.satisfied) return Conclusion::NotCovered;
    if (tongue && tongue->status == TongueStatus::Failed) return Conclusion::Inconclusive;
    return Conclusion::NoRealJacobianMate;
}

CertificateDocument::CertificateDocument(std::string input, CriterionCertificate criterion,
                                         std::optional<TongueCertificate> tongue, std::optional<TrialReport> trials)
    : input_(std::move(input)), criterion_(std::move(criterion)), trials_(std::move(trials)) {
    if (criterion_.satisfied) tongue_ = std::move(tongue);
    conclusion_ = derive_conclusion(criterion_, tongue_ ? &*tongue_ : nullptr);
}

CertificateDocument::CertificateDocument(std::string input, CriterionCertificate criterion,
                                         std::optional<TongueCertificate> tongue, std::optional<TrialReport> trials,
                                         Conclusion conclusion)
    : input_(std::move(input)),
      criterion_(std::move(criterion)),
      tongue_(std::move(tongue)),
      trials_(std::move(trials)),
      conclusion_(conclusion) {
    if (conclusion_ != derive_conclusion(criterion_, tongue_ ? &*tongue_ : nullptr))
        throw std::invalid_argument(std::string("conclusion ") + rjm::to_string(conclusion_) +
                                    " contradicts the criterion and tongue sections");
    if (!criterion_.satisfied && tongue_) throw std::invalid_argument("tongue section requires a satisfied criterion");
}

std::string CertificateDocument::summary() const {
    switch (conclusion_) {
        case Conclusion::NoRealJacobianMate: return input_ + " has no real Jacobian mate";
        case Conclusion::Inconclusive: return input_ + ": inconclusive (tongue verification failed)";
        case Conclusion::NotCovered: return input_ + ": not covered by the edge criterion";
    }
    return input_;
}

namespace {

Json point(const LatticePoint& p) { return Json::array({p.i, p.j}); }

Json point(const Point& p) { return Json::array({p.x, p.y}); }

}  // namespace

Json to_json(const OuterEdge& e) {
    Json j = {{"from", point(e.from)}, {"to", point(e.to)}, {"normal", Json::array({e.normal.v1, e.normal.v2})}};
    if (e.slope) j["slope"] = to_string(*e.slope);
    return j;
}

Json to_json(const CriterionCertificate& c) {
    Json j;
    j["satisfied"] = c.satisfied;
    j["transform_used"] = c.transform_used.name();
    if (c.witness_edge) {
        j["witness_edge"] = to_json(*c.witness_edge);
    }
    if (c.far_endpoint) j["far_endpoint"] = point(*c.far_endpoint);
    if (c.satisfied) j["primitive_check"] = c.primitive_check;
    if (c.theta) j["theta"] = to_string(*c.theta);
    return j;
}

CriterionCertificate criterion_from_json(const Json& j) {
    CriterionCertificate c;
    c.satisfied = j.at("satisfied").get<bool>();
    const auto name = j.at("transform_used").get<std::string>();
    bool found = false;
    for (const auto& t : all_transforms())
        if (t.name() == name) {
            c.transform_used = t;
            found = true;
        }
    if (!found) throw std::invalid_argument("unknown transform " + name);
    auto lattice = [](const Json& a) { return LatticePoint{a.at(0).get<int>(), a.at(1).get<int>()}; };
    if (j.contains("witness_edge")) {
        OuterEdge e;
        const auto& we = j["witness_edge"];
        e.from = lattice(we.at("from"));
        e.to = lattice(we.at("to"));
        e.normal = {we.at("normal").at(0).get<long>(), we.at("normal").at(1).get<long>()};
        e.is_right = e.normal.v1 > 0;
        if (e.is_right) e.slope = Rational(e.normal.v2, e.normal.v1);
        c.witness_edge = e;
    }
    if (j.contains("far_endpoint")) c.far_endpoint = lattice(j["far_endpoint"]);
    if (j.contains("primitive_check")) c.primitive_check = j["primitive_check"].get<long>();
    if (j.contains("theta")) c.theta = Rational(j["theta"].get<std::string>());
    return c;
}

Json to_json(const TongueCertificate& t) {
    Json j;
    j["status"] = to_string(t.status);
    j["reasons"] = t.reasons;
    if (t.region) {
        const auto& r = *t.region;
        j["transform"] = r.transform.name();
        j["sign_flipped"] = r.sign_flipped;
        j["normalized"] = r.normalized.to_string();
        j["x0"] = to_string(r.x0);
        j["x_max"] = r.x_max;
        j["halfline"] = {{"y", 0}, {"x_from", to_string(r.x0)}};
        const auto& pr = r.profile;
        j["profile"] = {{"f_x0", pr.f_x0},
                        {"t0", to_string(pr.t0)},
                        {"a", pr.a},
                        {"b", pr.b},
                        {"critical_points_of_h", pr.critical_points_of_h},
                        {"h_max", pr.h_max}};
        const auto& bt = r.boundary_trace;
        j["boundary"] = {{"theta", to_string(bt.theta)},
                         {"samples", bt.samples.size()},
                         {"residual_bound", bt.residual_bound},
                         {"ratio_min", bt.ratio_min},
                         {"ratio_max", bt.ratio_max}};
    }
    if (t.critical_points) {
        const auto& c = *t.critical_points;
        Json w = Json::array();
        for (const auto& p : c.witnesses) w.push_back(point(p));
        j["critical_points"] = {{"passed", c.passed},
                                {"degenerate", c.degenerate},
                                {"columns_checked", c.columns_checked},
                                {"min_gradient_norm", c.min_gradient_norm},
                                {"witnesses", w}};
    }
    if (t.levels) {
        Json recs = Json::array();
        for (const auto& r : t.levels->levels)
            recs.push_back({{"t", to_string(r.t)},
                            {"classification", to_string(r.classification)},
                            {"component_count", r.component_count},
                            {"boundary_endpoint_count", r.boundary_endpoint_count},
                            {"expected_endpoint_count", r.expected_endpoint_count},
                            {"truncation_hits", r.truncation_hits},
                            {"escapes", r.escapes},
                            {"closed_loop_detected", r.closed_loop_detected},
                            {"passed", r.passed}});
        j["levels"] = {{"passed", t.levels->passed}, {"records", recs}};
    }
    return j;
}

Json to_json(const SearchOutcome& o) {
    if (const auto* w = std::get_if<ZeroWitness>(&o))
        return {{"outcome", "witness"},
                {"point", point(w->point)},
                {"jac_value", w->jac_value},
                {"exact_abs_jac", w->exact_abs_jac},
                {"method", to_string(w->method)}};
    const auto& m = std::get<MinRecord>(o);
    return {{"outcome", "min_record"},
            {"best_point", point(m.best_point)},
            {"best_abs_jac", m.best_abs_jac},
            {"boxes_searched", m.boxes_searched}};
}

Json to_json(const TrialOutcome& t) {
    Json j;
    j["index"] = t.index;
    j["seed"] = t.seed;
    j["q"] = t.q.to_string();
    const Json oj = to_json(t.outcome);
    for (const auto& [k, v] : oj.items()) j[k] = v;
    return j;
}

Json to_json(const TrialReport& r) {
    Json trials = Json::array();
    for (const auto& t : r.trials) trials.push_back(to_json(t));
    return {{"certified", r.certified}, {"witness_rate", r.witness_rate}, {"trials", trials}};
}

Json to_json(const CertificateDocument& doc) {
    Json j;
    j["tool_version"] = doc.tool_version();
    j["input"] = doc.input();
    j["criterion"] = to_json(doc.criterion());
    if (doc.tongue()) j["tongue"] = to_json(*doc.tongue());
    if (doc.falsifier_trials()) {
        Json trials = Json::array();
        for (const auto& t : doc.falsifier_trials()->trials) trials.push_back(to_json(t));
        j["falsifier_trials"] = trials;
    }
    j["conclusion"] = to_string(doc.conclusion());
    j["summary"] = doc.summary();
    return j;
}

std::string emit_certificate_json(const CertificateDocument& doc) { return to_json(doc).dump(2) + "\n"; }

}  // namespace rjm
