#pragma once

#include <nccr/io.hpp>
#include <nccr/polytope.hpp>

#include <optional>
#include <string>
#include <vector>

namespace nccr {

struct PipelineConfig {
    long l_max = 20;
    bool subdivide = false;
    bool oracle = false;
    bool prefer_window = false;
    long index_cap = 64;
    std::optional<IntVector> interior_point;
    bool operator==(const PipelineConfig& o) const = default;
};

enum class VerdictKind { CertifiedNccr, Conditional, Failed, NotApplicable };
const char* to_string(VerdictKind k);
VerdictKind verdict_from_string(const std::string& s);

struct Verdict {
    VerdictKind kind = VerdictKind::Failed;
    std::string step;
    std::string reason;
    bool operator==(const Verdict& o) const = default;
};

struct CertificateStep {
    std::string name;
    Json inputs;
    Json outputs;
    std::string status;  // ok | failed | not_applicable
    std::string ref;
    bool operator==(const CertificateStep& o) const = default;
};

struct NccrCertificate {
    int schema = 1;
    std::string name;
    std::size_t dim = 0;
    std::vector<IntVector> input_vertices;
    PipelineConfig config;
    std::vector<CertificateStep> steps;
    Verdict verdict;
    std::vector<std::string> assumptions;
    Json artifacts;
    bool operator==(const NccrCertificate& o) const = default;

    const CertificateStep* step(const std::string& name) const;
};

NccrCertificate certify_nccr(const LatticePolytope& p, const PipelineConfig& config = {}, const std::string& name = "");

Json to_json(const PipelineConfig& c);
PipelineConfig config_from_json(const Json& j);
Json to_json(const NccrCertificate& c);
NccrCertificate certificate_from_json(const Json& j);

struct ReplayResult {
    bool identical = false;
    std::string first_difference;
};
ReplayResult replay(const NccrCertificate& c);

struct ExampleCheck {
    std::string description;
    bool passed = false;
    std::string detail;
};

struct ExampleReport {
    std::string name;
    std::vector<NccrCertificate> certificates;
    std::vector<ExampleCheck> checks;
    bool passed() const;
};

std::vector<std::string> builtin_example_names();
ExampleReport run_builtin_example(const std::string& name, const PipelineConfig& config = {});

Json to_json(const ExampleReport& r);
// Human-readable narration of the certificate's data.
std::string to_text(const NccrCertificate& c);
std::string to_text(const ExampleReport& r);

// The 16 reflexive polygons up to lattice equivalence.
std::vector<std::vector<IntVector>> reflexive_polygons();

}  // namespace nccr
