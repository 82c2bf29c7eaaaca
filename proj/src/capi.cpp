#include <nccr/error.hpp>
#include <nccr/nccr.h>
#include <nccr/pipeline.hpp>

#include <cstdlib>
#include <cstring>
#include <new>

struct nccr_polytope {
    nccr::LatticePolytope polytope;
    std::optional<std::string> name;
    std::vector<std::string> warnings;
};

struct nccr_config {
    nccr::PipelineConfig config;
};

struct nccr_certificate {
    nccr::NccrCertificate cert;
};

namespace {

thread_local std::string last_error;

nccr_status record(nccr_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

template <class F>
nccr_status guard(F&& body) {
    try {
        last_error.clear();
        body();
        return NCCR_OK;
    } catch (const nccr::Error& e) {
        return record(static_cast<nccr_status>(static_cast<int>(e.code())), e.what());
    } catch (const std::bad_alloc&) {
        return record(NCCR_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return record(NCCR_ERR_INTERNAL, e.what());
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::string dump(const nccr::Json& j, int indent) { return indent < 0 ? j.dump() : j.dump(indent); }

#define NCCR_REQUIRE(cond, what) \
    if (!(cond)) return record(NCCR_ERR_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* nccr_version(void) { return "1.0.0"; }

const char* nccr_status_name(nccr_status s) {
    if (s == NCCR_OK) return "Ok";
    if (s < NCCR_ERR_DIMENSION_MISMATCH || s > NCCR_ERR_INTERNAL) return "Unknown";
    return nccr::error_code_name(static_cast<nccr::ErrorCode>(static_cast<int>(s)));
}

const char* nccr_last_error_message(void) { return last_error.c_str(); }

void nccr_string_free(char* s) { std::free(s); }

nccr_status nccr_polytope_parse(const char* bytes, size_t len, nccr_polytope** out) {
    NCCR_REQUIRE(bytes && out, "null argument");
    *out = nullptr;
    return guard([&] {
        nccr::ParsedPolytope p = nccr::parse_polytope(std::string(bytes, len));
        *out = new nccr_polytope{std::move(p.polytope), std::move(p.name), std::move(p.warnings)};
    });
}

nccr_status nccr_polytope_from_vertices(size_t dim, size_t count, const long* coords, nccr_polytope** out) {
    NCCR_REQUIRE(out && (coords || count == 0), "null argument");
    *out = nullptr;
    return guard([&] {
        std::vector<nccr::IntVector> pts;
        for (size_t i = 0; i < count; ++i) {
            nccr::IntVector v;
            for (size_t k = 0; k < dim; ++k) v.push_back(nccr::Int(coords[i * dim + k]));
            pts.push_back(v);
        }
        nccr::HullResult h = nccr::convex_hull(pts, dim);
        auto* p = new nccr_polytope{std::move(h.polytope), std::nullopt, {}};
        for (const auto& d : h.dropped) p->warnings.push_back("dropped non-vertex point " + nccr::to_string(d));
        *out = p;
    });
}

size_t nccr_polytope_dim(const nccr_polytope* p) { return p ? p->polytope.dim : 0; }
size_t nccr_polytope_vertex_count(const nccr_polytope* p) { return p ? p->polytope.vertices.size() : 0; }
const char* nccr_polytope_name(const nccr_polytope* p) { return p && p->name ? p->name->c_str() : nullptr; }
size_t nccr_polytope_warning_count(const nccr_polytope* p) { return p ? p->warnings.size() : 0; }
const char* nccr_polytope_warning(const nccr_polytope* p, size_t i) {
    return p && i < p->warnings.size() ? p->warnings[i].c_str() : nullptr;
}
void nccr_polytope_free(nccr_polytope* p) { delete p; }

nccr_status nccr_config_new(nccr_config** out) {
    NCCR_REQUIRE(out, "null argument");
    return guard([&] { *out = new nccr_config{}; });
}
void nccr_config_free(nccr_config* c) { delete c; }

nccr_status nccr_config_set_lmax(nccr_config* c, long l_max) {
    NCCR_REQUIRE(c, "null config");
    NCCR_REQUIRE(l_max >= 1, "l_max must be positive");
    c->config.l_max = l_max;
    return NCCR_OK;
}
nccr_status nccr_config_set_subdivide(nccr_config* c, int on) {
    NCCR_REQUIRE(c, "null config");
    c->config.subdivide = on != 0;
    return NCCR_OK;
}
nccr_status nccr_config_set_oracle(nccr_config* c, int on) {
    NCCR_REQUIRE(c, "null config");
    c->config.oracle = on != 0;
    return NCCR_OK;
}
nccr_status nccr_config_set_prefer_window(nccr_config* c, int on) {
    NCCR_REQUIRE(c, "null config");
    c->config.prefer_window = on != 0;
    return NCCR_OK;
}
nccr_status nccr_config_set_index_cap(nccr_config* c, long cap) {
    NCCR_REQUIRE(c, "null config");
    NCCR_REQUIRE(cap >= 1, "index cap must be positive");
    c->config.index_cap = cap;
    return NCCR_OK;
}
nccr_status nccr_config_set_interior_point(nccr_config* c, size_t dim, const long* coords) {
    NCCR_REQUIRE(c && (coords || dim == 0), "null argument");
    nccr::IntVector v;
    for (size_t i = 0; i < dim; ++i) v.push_back(nccr::Int(coords[i]));
    c->config.interior_point = v;
    return NCCR_OK;
}

nccr_status nccr_certify(const nccr_polytope* p, const nccr_config* c, const char* name, nccr_certificate** out) {
    NCCR_REQUIRE(p && out, "null argument");
    *out = nullptr;
    return guard([&] {
        std::string n = name ? name : p->name.value_or("");
        *out = new nccr_certificate{nccr::certify_nccr(p->polytope, c ? c->config : nccr::PipelineConfig{}, n)};
    });
}

nccr_status nccr_certificate_parse(const char* bytes, size_t len, nccr_certificate** out) {
    NCCR_REQUIRE(bytes && out, "null argument");
    *out = nullptr;
    return guard([&] {
        *out = new nccr_certificate{nccr::certificate_from_json(nccr::parse_json_text(std::string(bytes, len)))};
    });
}

nccr_verdict nccr_certificate_verdict(const nccr_certificate* c) {
    if (!c) return NCCR_VERDICT_FAILED;
    switch (c->cert.verdict.kind) {
    case nccr::VerdictKind::CertifiedNccr: return NCCR_VERDICT_CERTIFIED;
    case nccr::VerdictKind::Conditional: return NCCR_VERDICT_CONDITIONAL;
    case nccr::VerdictKind::Failed: return NCCR_VERDICT_FAILED;
    case nccr::VerdictKind::NotApplicable: return NCCR_VERDICT_NOT_APPLICABLE;
    }
    return NCCR_VERDICT_FAILED;
}

nccr_status nccr_certificate_json(const nccr_certificate* c, int indent, char** out) {
    NCCR_REQUIRE(c && out, "null argument");
    return guard([&] { *out = dup(dump(nccr::to_json(c->cert), indent)); });
}

nccr_status nccr_certificate_text(const nccr_certificate* c, char** out) {
    NCCR_REQUIRE(c && out, "null argument");
    return guard([&] { *out = dup(nccr::to_text(c->cert)); });
}

nccr_status nccr_certificate_replay(const nccr_certificate* c, int* identical, char** difference) {
    NCCR_REQUIRE(c && identical, "null argument");
    return guard([&] {
        nccr::ReplayResult r = nccr::replay(c->cert);
        *identical = r.identical ? 1 : 0;
        if (difference) *difference = dup(r.first_difference);
    });
}

void nccr_certificate_free(nccr_certificate* c) { delete c; }

nccr_status nccr_cohomology(const char* fan_json, const char* divisor_json, int oracle, int indent, char** out) {
    NCCR_REQUIRE(fan_json && divisor_json && out, "null argument");
    return guard([&] {
        nccr::Fan f = nccr::fan_from_json(nccr::parse_json_text(fan_json));
        nccr::IntVector w = nccr::int_vector_from_json(nccr::parse_json_text(divisor_json), "divisor");
        if (w.size() != f.rays.size())
            nccr::fail(nccr::ErrorCode::DimensionMismatch, "divisor needs one coefficient per ray");
        nccr::CohomologyTable t = nccr::line_bundle_cohomology(f, w);
        nccr::Json j;
        j["dims"] = nccr::to_json(t);
        if (oracle) {
            nccr::CohomologyTable b = nccr::brute_force_cohomology(f, w);
            j["oracle"] = {{"dims", nccr::to_json(b)}, {"agrees", b == t}};
        }
        *out = dup(dump(j, indent));
    });
}

nccr_status nccr_fan_info(const char* fan_json, int indent, char** out) {
    NCCR_REQUIRE(fan_json && out, "null argument");
    return guard([&] {
        nccr::Fan f = nccr::fan_from_json(nccr::parse_json_text(fan_json));
        nccr::FanPredicates pr = nccr::fan_predicates(f);
        nccr::Json j;
        j["predicates"] = {{"simplicial", pr.simplicial}, {"complete", pr.complete}, {"smooth", pr.smooth}};
        nccr::ClassGroup cl(f);
        j["class_group"] = nccr::to_json(cl.group());
        j["anticanonical"] = nccr::to_json(cl.anticanonical());
        nccr::Json cones = nccr::Json::array();
        for (std::size_t i = 0; i < f.max_cones.size(); ++i) {
            nccr::Json c{{"cone", f.max_cones[i]}};
            try {
                nccr::GorensteinElement g = nccr::gorenstein_element(f.cone(i));
                c["m"] = nccr::to_json(g.m);
                c["integral"] = g.integral;
            } catch (const nccr::Error& e) {
                c["m"] = nullptr;
                c["error"] = nccr::error_code_name(e.code());
            }
            cones.push_back(c);
        }
        j["gorenstein"] = cones;
        *out = dup(dump(j, indent));
    });
}

size_t nccr_example_count(void) { return nccr::builtin_example_names().size(); }

const char* nccr_example_name(size_t i) {
    static const std::vector<std::string> names = nccr::builtin_example_names();
    return i < names.size() ? names[i].c_str() : nullptr;
}

nccr_status nccr_run_example(const char* name, const nccr_config* c, int as_text, int indent, int* passed, char** out) {
    NCCR_REQUIRE(name && out, "null argument");
    return guard([&] {
        nccr::ExampleReport r = nccr::run_builtin_example(name, c ? c->config : nccr::PipelineConfig{});
        if (passed) *passed = r.passed() ? 1 : 0;
        *out = dup(as_text ? nccr::to_text(r) : dump(nccr::to_json(r), indent));
    });
}

}  // extern "C"
