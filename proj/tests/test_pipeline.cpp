#include <doctest.h>

#include <nccr/error.hpp>
#include <nccr/pipeline.hpp>

#include "support/helpers.hpp"

#include <algorithm>
#include <set>

using namespace nccr;
using testing::pts;

namespace {

LatticePolytope fms() { return polytope_from_vertices(pts({{2, 2}, {2, 0}, {0, 0}, {0, -2}}), 2); }

LatticePolytope cube() {
    std::vector<std::vector<long>> v;
    for (long a : {-1, 1})
        for (long b : {-1, 1})
            for (long c : {-1, 1}) v.push_back({a, b, c});
    return polytope_from_vertices(pts(v), 3);
}

bool certified(const NccrCertificate& c) { return c.verdict.kind == VerdictKind::CertifiedNccr; }

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("the two-line quotient is certified through the sublattice route") {
    auto c = certify_nccr(fms(), {}, "fms");
    REQUIRE(certified(c));
    CHECK(c.artifacts["route"] == "sublattice");
    CHECK(c.artifacts["sublattice"]["index"] == 2);
    CHECK(c.artifacts["group"]["order"] == 2);
    CHECK(c.artifacts["collection"]["members"].size() == 8);
    CHECK(c.artifacts["vanishing"]["kind"] == "CERTIFIED_ALL_L");
    CHECK(c.artifacts["vanishing"]["classes"] == 64);
    CHECK(c.step("sublattice/vanishing") != nullptr);
    for (const auto* tag : {"translation-invariance", "canonical-bundle-cone-is-gorenstein",
                            "nccr-from-tilting-on-regular-triangulation", "finite-quotient-presentation"})
        CHECK(std::find(c.assumptions.begin(), c.assumptions.end(), tag) != c.assumptions.end());
}

TEST_CASE("a simplex without interior points is not applicable") {
    auto c = certify_nccr(polytope_from_vertices(pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 3));
    CHECK(c.verdict.kind == VerdictKind::NotApplicable);
    CHECK(c.verdict.step == "interior_point");
}

TEST_CASE("non-primitive translated vertices are not applicable") {
    auto c = certify_nccr(polytope_from_vertices(pts({{-2, -2}, {2, -2}, {0, 2}}), 2),
                          PipelineConfig{.interior_point = int_vector({0, 0})});
    CHECK(c.verdict.kind == VerdictKind::NotApplicable);
    CHECK(c.verdict.step == "translate");
}

TEST_CASE("the cube fails at the face fan unless subdivided") {
    auto c = certify_nccr(cube());
    CHECK(c.verdict.kind == VerdictKind::Failed);
    CHECK(c.verdict.step == "face_fan");
    PipelineConfig cfg;
    cfg.subdivide = true;
    auto s = certify_nccr(cube(), cfg);
    REQUIRE(s.step("face_fan"));
    CHECK(s.step("face_fan")->status == "ok");
    CHECK(s.step("face_fan")->outputs.contains("subdivided"));
    CHECK(s.verdict.kind == VerdictKind::Failed);
    CHECK(s.assumptions.empty());
}

TEST_CASE("requested interior points") {
    auto poly = polytope_from_vertices(pts({{-1, -1}, {5, -1}, {-1, 2}}), 2);
    PipelineConfig cfg;
    cfg.interior_point = int_vector({5, 5});
    CHECK(certify_nccr(poly, cfg).verdict.kind == VerdictKind::NotApplicable);
    cfg.interior_point = int_vector({1, 0});
    auto c = certify_nccr(poly, cfg);
    CHECK(c.artifacts["interior_point"] == Json::parse("[1,0]"));
}

TEST_CASE("certificates round-trip through JSON and replay identically") {
    auto c = certify_nccr(fms(), {}, "fms");
    Json j = to_json(c);
    auto back = certificate_from_json(Json::parse(j.dump()));
    CHECK(back == c);
    CHECK(to_json(back).dump() == j.dump());
    auto r = replay(back);
    CHECK(r.identical);
    CHECK(r.first_difference.empty());
    back.artifacts["route"] = "window";
    CHECK_FALSE(replay(back).identical);
}

TEST_CASE("config round-trip") {
    PipelineConfig cfg;
    cfg.l_max = 7;
    cfg.oracle = true;
    cfg.interior_point = int_vector({1, 2});
    CHECK(config_from_json(to_json(cfg)) == cfg);
}

TEST_CASE("the oracle audit never changes the verdict") {
    for (const auto& poly : reflexive_polygons()) {
        auto p = polytope_from_vertices(poly, 2);
        PipelineConfig cfg;
        cfg.subdivide = true;
        auto plain = certify_nccr(p, cfg);
        cfg.oracle = true;
        auto audited = certify_nccr(p, cfg);
        CHECK(plain.verdict == audited.verdict);
        if (audited.artifacts.contains("route") && audited.artifacts["route"] == "boundary_refinement")
            CHECK(std::find(audited.assumptions.begin(), audited.assumptions.end(),
                            "star-subdivision-regular-triangulation") != audited.assumptions.end());
        for (const auto& s : audited.steps)
            if (s.name.find("oracle_audit") != std::string::npos) CHECK(s.outputs["mismatches"] == 0);
    }
}

TEST_CASE("verdict and class group do not depend on the interior point chosen") {
    std::vector<std::vector<std::vector<long>>> polys = {
        {{-1, -1}, {5, -1}, {-1, 2}},
        {{0, 0}, {6, 0}, {0, 3}},
        {{-1, -1}, {2, -1}, {2, 1}, {-1, 1}},
    };
    for (const auto& raw : polys) {
        auto p = polytope_from_vertices(pts(raw), 2);
        auto inner = interior_lattice_points(p);
        REQUIRE(inner.size() >= 2);
        std::optional<Json> group;
        std::size_t compared = 0;
        for (const auto& m : inner) {
            PipelineConfig cfg;
            cfg.interior_point = m;
            auto c = certify_nccr(p, cfg);
            if (!c.artifacts.contains("cone_class_group")) continue;
            if (!group) group = c.artifacts["cone_class_group"];
            CHECK(c.artifacts["cone_class_group"] == *group);
            ++compared;
        }
        CHECK(compared >= 2);
    }
}

TEST_CASE("certified difference classes vanish for many twists") {
    for (const auto& poly : {fms(), polytope_from_vertices(pts({{1, 0}, {0, -1}, {-1, 3}}), 2)}) {
        auto c = certify_nccr(poly);
        REQUIRE(certified(c));
        Fan f = fan_from_json(c.artifacts["fan"]);
        const Json& basis = c.artifacts["sublattice"]["basis"];
        IntMatrix m(f.dim, f.dim);
        for (std::size_t i = 0; i < f.dim; ++i) {
            IntVector col = int_vector_from_json(basis[i], "basis");
            for (std::size_t k = 0; k < f.dim; ++k) m(k, i) = col[k];
        }
        auto s = fan_in_sublattice(f, LatticeEmbedding{f.dim, m});
        IntVector beta(s.beta.begin(), s.beta.end());
        std::vector<IntVector> weil;
        for (const auto& mem : c.artifacts["collection"]["members"]) weil.push_back(int_vector_from_json(mem["weil"], "weil"));
        CohomologyEngine engine(s.fan);
        std::set<IntVector> seen;
        for (const auto& a : weil)
            for (const auto& b : weil) {
                IntVector d = sub(b, a);
                if (!seen.insert(d).second) continue;
                for (long l = 0; l <= 25; ++l) CHECK(engine.compute(add(d, scale(beta, l))).higher_vanish());
            }
    }
}

TEST_CASE("builtin examples") {
    auto names = builtin_example_names();
    CHECK(names.size() == 5);
    for (const auto& n : {"beilinson-Pn", "hirzebruch-wp113", "fms-example"}) {
        auto r = run_builtin_example(n);
        CHECK_MESSAGE(r.passed(), n);
        CHECK_FALSE(to_text(r).empty());
    }
    try {
        run_builtin_example("nope");
        FAIL("expected UnknownExample");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownExample);
    }
}

}
