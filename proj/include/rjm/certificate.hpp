#pragma once

// The JSON certificate: criterion, optional tongue and falsifier sections,
// and the overall conclusion.

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "rjm/falsifier.hpp"

namespace rjm {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Conclusion { NoRealJacobianMate, Inconclusive, NotCovered };

const char* to_string(Conclusion c);

/// The conclusion forced by a criterion and an optional tongue certificate.
Conclusion derive_conclusion(const CriterionCertificate& criterion, const TongueCertificate* tongue);

class CertificateDocument {
public:
    /// Derives the conclusion; the tongue section is dropped when the
    /// criterion is not satisfied.
    CertificateDocument(std::string input, CriterionCertificate criterion, std::optional<TongueCertificate> tongue,
                        std::optional<TrialReport> trials);

    /// Explicit conclusion; throws std::invalid_argument if it contradicts the
    /// criterion and tongue.
    CertificateDocument(std::string input, CriterionCertificate criterion, std::optional<TongueCertificate> tongue,
                        std::optional<TrialReport> trials, Conclusion conclusion);

    const std::string& tool_version() const { return tool_version_; }
    const std::string& input() const { return input_; }
    const CriterionCertificate& criterion() const { return criterion_; }
    const std::optional<TongueCertificate>& tongue() const { return tongue_; }
    const std::optional<TrialReport>& falsifier_trials() const { return trials_; }
    Conclusion conclusion() const { return conclusion_; }

    /// One human-readable line stating the conclusion.
    std::string summary() const;

private:
    std::string tool_version_ = kToolVersion;
    std::string input_;
    CriterionCertificate criterion_;
    std::optional<TongueCertificate> tongue_;
    std::optional<TrialReport> trials_;
    Conclusion conclusion_ = Conclusion::NotCovered;
};

using Json = nlohmann::ordered_json;

Json to_json(const OuterEdge& e);
Json to_json(const CriterionCertificate& c);
Json to_json(const TongueCertificate& t);
Json to_json(const TrialOutcome& t);
Json to_json(const TrialReport& r);
Json to_json(const SearchOutcome& o);
Json to_json(const CertificateDocument& doc);

/// Reads back the criterion section written by to_json.
CriterionCertificate criterion_from_json(const Json& j);

/// Pretty-printed document with a trailing newline.
std::string emit_certificate_json(const CertificateDocument& doc);

}  // namespace rjm
