#include <nccr/error.hpp>
#include <nccr/pipeline.hpp>

#include <algorithm>
#include <future>
#include <set>

namespace nccr {

const char* to_string(VerdictKind k) {
    switch (k) {
    case VerdictKind::CertifiedNccr: return "CERTIFIED_NCCR";
    case VerdictKind::Conditional: return "CONDITIONAL";
    case VerdictKind::Failed: return "FAILED";
    case VerdictKind::NotApplicable: return "NOT_APPLICABLE";
    }
    return "?";
}

VerdictKind verdict_from_string(const std::string& s) {
    for (auto k : {VerdictKind::CertifiedNccr, VerdictKind::Conditional, VerdictKind::Failed, VerdictKind::NotApplicable})
        if (s == to_string(k)) return k;
    fail(ErrorCode::Parse, "unknown verdict " + s);
}

const CertificateStep* NccrCertificate::step(const std::string& n) const {
    for (const auto& s : steps)
        if (s.name == n) return &s;
    return nullptr;
}

namespace {

Json cones_json(const std::vector<std::vector<std::size_t>>& cones) {
    Json a = Json::array();
    for (const auto& c : cones) a.push_back(c);
    return a;
}

Json basis_json(const LatticeEmbedding& e) {
    std::vector<IntVector> cols;
    for (std::size_t i = 0; i < e.basis.cols(); ++i) cols.push_back(e.basis.column(i));
    return to_json(cols);
}

Json vanishing_json(const VanishingCertificate& v) {
    Json j;
    j["kind"] = to_string(v.kind);
    j["l_max"] = v.l_max;
    j["escape_proved"] = v.escape_proved;
    j["classes"] = v.evidence.size();
    if (v.witness) {
        j["witness"] = {{"class_index", v.witness->class_index},
                        {"l", v.witness->l},
                        {"degree", v.witness->degree},
                        {"dimension", v.witness->dimension}};
    }
    Json ev = Json::array();
    std::set<DivisorClass> seen;
    for (const auto& e : v.evidence) {
        if (!seen.insert(e.cls).second) continue;
        Json x;
        x["class"] = to_json(e.cls);
        Json entries = Json::array();
        for (const auto& r : e.entries) {
            Json y{{"region", r.region}, {"first", to_json(r.first)}};
            y["last"] = r.last ? to_json(*r.last) : Json(nullptr);
            entries.push_back(y);
        }
        x["entries"] = entries;
        ev.push_back(x);
    }
    j["distinct_classes"] = ev;
    return j;
}

Json tilting_json(const TiltingReport& t) {
    Json j;
    j["partial_tilting"] = t.partial_tilting;
    j["hom_dims"] = t.hom_dims;
    if (t.witness)
        j["ext_witness"] = {{"from", t.witness->from},
                            {"to", t.witness->to},
                            {"degree", t.witness->degree},
                            {"dimension", t.witness->dimension}};
    return j;
}

enum class RouteOutcome { Certified, Conditional, Failed };

struct RouteResult {
    RouteOutcome outcome = RouteOutcome::Failed;
    std::string failed_step;
    std::string reason;
    std::vector<std::string> assumptions;
    Json artifacts = Json::object();
    // for the oracle audit
    std::optional<Fan> vanishing_fan;
    std::vector<DivisorClass> classes;
    std::optional<DivisorClass> twist;
};

class Run {
public:
    Run(const LatticePolytope& p, const PipelineConfig& config, const std::string& name) : p_(p) {
        cert_.name = name;
        cert_.dim = p.dim;
        cert_.input_vertices = p.vertices;
        cert_.config = config;
        cert_.artifacts = Json::object();
    }

    NccrCertificate finish() && { return std::move(cert_); }

    void execute() {
        const auto& cfg = cert_.config;
        {
            Json in{{"vertices", to_json(p_.vertices)}};
            Json out{{"dim", p_.dim}, {"vertex_count", p_.vertices.size()}, {"facet_count", p_.facets.size()}};
            add("input", in, out, "ok", "lattice-polytope");
        }
        // interior point
        IntVector m;
        {
            Json in = Json::object();
            if (cfg.interior_point) in["requested"] = to_json(*cfg.interior_point);
            auto pts = interior_lattice_points(p_);
            Json out{{"interior_point_count", pts.size()}};
            if (cfg.interior_point) {
                if (cfg.interior_point->size() != p_.dim ||
                    std::find(pts.begin(), pts.end(), *cfg.interior_point) == pts.end()) {
                    add("interior_point", in, out, "not_applicable", "interior-point-translation");
                    return verdict(VerdictKind::NotApplicable, "interior_point",
                                   "requested point is not an interior lattice point");
                }
                m = *cfg.interior_point;
            } else {
                if (pts.empty()) {
                    add("interior_point", in, out, "not_applicable", "interior-point-translation");
                    return verdict(VerdictKind::NotApplicable, "interior_point", "no interior lattice point");
                }
                m = pts.front();
            }
            out["interior_point"] = to_json(m);
            add("interior_point", in, out, "ok", "interior-point-translation");
            cert_.artifacts["interior_point"] = to_json(m);
        }
        // translate
        {
            q_ = translate(p_, m);
            Json out{{"vertices", to_json(q_.vertices)}};
            std::vector<IntVector> bad;
            for (const auto& v : q_.vertices)
                if (!is_primitive(v)) bad.push_back(v);
            out["non_primitive"] = to_json(bad);
            if (!bad.empty()) {
                add("translate", {{"shift", to_json(m)}}, out, "not_applicable", "primitive-vertices");
                return verdict(VerdictKind::NotApplicable, "translate",
                               "translated vertex " + to_string(bad.front()) + " is not primitive");
            }
            add("translate", {{"shift", to_json(m)}}, out, "ok", "primitive-vertices");
            cert_.artifacts["translated_vertices"] = to_json(q_.vertices);
        }
        // face fan
        {
            Fan f = face_fan(q_);
            Json out{{"rays", to_json(f.rays)}, {"max_cones", cones_json(f.max_cones)}};
            out["simplicial"] = is_simplicial(f);
            if (!is_simplicial(f)) {
                if (!cfg.subdivide) {
                    add("face_fan", {{"subdivide", false}}, out, "failed", "simplicial-face-fan");
                    return verdict(VerdictKind::Failed, "face_fan", "face fan not simplicial");
                }
                Triangulation t = pulling_triangulation(q_);
                if (!verify_regular_triangulation(q_, t)) {
                    add("face_fan", {{"subdivide", true}}, out, "failed", "simplicial-face-fan");
                    return verdict(VerdictKind::Failed, "face_fan", "pulling triangulation failed verification");
                }
                f = face_fan_from_simplices(q_, boundary_simplices(q_, t));
                out["subdivided"] = {{"rays", to_json(f.rays)}, {"max_cones", cones_json(f.max_cones)},
                                     {"heights", to_json(t.heights)}};
                subdivided_ = true;
            }
            fan_ = f;
            add("face_fan", {{"subdivide", cfg.subdivide}}, out, "ok", "simplicial-face-fan");
            cert_.artifacts["fan"] = to_json(fan_);
        }
        // gorenstein element of the cone over P'
        {
            Cone c = cone_over_polytope(q_);
            GorensteinElement g = gorenstein_element(c);
            Json out{{"m", to_json(g.m)}, {"integral", g.integral}};
            if (!g.integral) {
                add("gorenstein", Json::object(), out, "failed", "canonical-bundle-cone-is-gorenstein");
                return verdict(VerdictKind::Failed, "gorenstein", "cone over the polytope is not Gorenstein");
            }
            add("gorenstein", Json::object(), out, "ok", "canonical-bundle-cone-is-gorenstein");
        }
        // class group of the cone over P'
        {
            std::vector<IntVector> rows;
            for (auto v : q_.vertices) {
                v.push_back(1);
                rows.push_back(v);
            }
            AbelianGroup g = cokernel_presentation(IntMatrix::from_rows(rows, q_.dim + 1));
            add("class_group", Json::object(), to_json(g), "ok", "translation-invariance");
            cert_.artifacts["cone_class_group"] = to_json(g);
        }
        // reflexivity and window eligibility
        {
            bool reflexive = is_reflexive(q_);
            ClassGroup cl(fan_);
            window_eligible_ = reflexive && !subdivided_ && q_.vertices.size() <= q_.dim + 2 &&
                               cl.group().free_rank >= 1 && cl.group().free_rank <= 2;
            Json out{{"reflexive", reflexive},
                     {"vertex_count", q_.vertices.size()},
                     {"fan_class_group", to_json(cl.group())},
                     {"window_eligible", window_eligible_}};
            add("reflexive_check", Json::object(), out, "ok", "window-hypotheses");
            boundary_extra_.clear();
            for (const auto& b : boundary_lattice_points(q_))
                if (std::find(q_.vertices.begin(), q_.vertices.end(), b) == q_.vertices.end())
                    boundary_extra_.push_back(b);
        }
        // routes
        std::vector<std::string> plan;
        if (cfg.prefer_window) plan = {"window", "sublattice"};
        else plan = {"sublattice", "window"};
        plan.push_back("boundary_refinement");
        std::vector<std::string> attempted, skipped;
        for (const auto& r : plan) {
            if (r == "window" && !window_eligible_) skipped.push_back(r);
            else if (r == "boundary_refinement" && (!cfg.subdivide || boundary_extra_.empty())) skipped.push_back(r);
            else attempted.push_back(r);
        }
        add("route_plan", {{"prefer_window", cfg.prefer_window}, {"subdivide", cfg.subdivide}},
            {{"order", plan}, {"eligible", attempted}, {"skipped", skipped}}, "ok", "route-selection");

        std::optional<RouteResult> conditional;
        RouteResult last;
        for (const auto& r : attempted) {
            RouteResult res;
            if (r == "sublattice") res = sublattice_route("sublattice", fan_);
            else if (r == "window") res = window_route();
            else res = refinement_route();
            if (res.outcome == RouteOutcome::Certified) return conclude(r, res, VerdictKind::CertifiedNccr);
            if (res.outcome == RouteOutcome::Conditional && !conditional) conditional = res, conditional_route_ = r;
            last = res;
        }
        if (conditional) return conclude(conditional_route_, *conditional, VerdictKind::Conditional);
        if (attempted.empty()) return verdict(VerdictKind::Failed, "route_plan", "no route applies");
        verdict(VerdictKind::Failed, last.failed_step, last.reason);
    }

private:
    void add(const std::string& name, Json in, Json out, const std::string& status, const std::string& ref) {
        cert_.steps.push_back({name, std::move(in), std::move(out), status, ref});
    }

    void verdict(VerdictKind k, const std::string& step, const std::string& reason) {
        cert_.verdict = {k, step, reason};
    }

    void conclude(const std::string& route, RouteResult& res, VerdictKind k) {
        if (cert_.config.oracle) oracle_audit(route, res);
        cert_.artifacts["route"] = route;
        for (auto& [key, val] : res.artifacts.items()) cert_.artifacts[key] = val;
        std::vector<std::string> tags = {"translation-invariance", "canonical-bundle-cone-is-gorenstein",
                                         "nccr-from-tilting-on-regular-triangulation"};
        if (subdivided_) tags.push_back("star-subdivision-regular-triangulation");
        for (auto& t : res.assumptions)
            if (std::find(tags.begin(), tags.end(), t) == tags.end()) tags.push_back(t);
        cert_.assumptions = tags;
        verdict(k, route + "/vanishing",
                k == VerdictKind::CertifiedNccr ? "vanishing certified for every l >= 1"
                                                : "vanishing checked up to l_max only");
    }

    RouteResult failed(const std::string& step, const std::string& reason) {
        RouteResult r;
        r.failed_step = step;
        r.reason = reason;
        return r;
    }

    template <class F>
    bool guarded(const std::string& name, const Json& in, const std::string& ref, RouteResult& err, F&& body) {
        try {
            body();
            return true;
        } catch (const Error& e) {
            add(name, in, {{"error", error_code_name(e.code())}, {"message", e.what()}}, "failed", ref);
            err = failed(name, e.what());
            return false;
        }
    }

    void vanishing_step(const std::string& prefix, const Fan& f, const LineBundleCollection& c,
                        const DivisorClass& twist, RouteResult& res, bool check_regions) {
        const std::string name = prefix + "/vanishing";
        const auto classes = difference_classes(c);
        Json in{{"twist", to_json(twist)}, {"l_max", cert_.config.l_max}, {"difference_classes", classes.size()}};
        VanishingCertificate v;
        Json out;
        RouteResult err;
        bool ok = guarded(name, in, "all-l-vanishing", err, [&] {
            ClassGroup cl(f);
            CohomologyEngine engine(f);
            auto regions = forbidden_regions(f, cl, engine);
            v = all_l_vanishing_certificate(engine, cl, regions, classes, twist, cert_.config.l_max);
            out = vanishing_json(v);
            out["region_count"] = regions.size();
            if (check_regions) {
                bool avoid = true;
                for (const auto& d : classes)
                    for (const auto& r : regions)
                        if (in_region(r, d)) avoid = false;
                out["differences_avoid_regions"] = avoid;
            }
        });
        if (!ok) {
            res = err;
            return;
        }
        res.vanishing_fan = f;
        res.classes = classes;
        res.twist = twist;
        res.artifacts["vanishing"] = out;
        switch (v.kind) {
        case VanishingCertificate::Kind::CertifiedAllL:
            add(name, in, out, "ok", "all-l-vanishing");
            res.outcome = RouteOutcome::Certified;
            break;
        case VanishingCertificate::Kind::CheckedUpTo:
            add(name, in, out, "ok", "all-l-vanishing");
            res.outcome = RouteOutcome::Conditional;
            break;
        case VanishingCertificate::Kind::Failed:
            add(name, in, out, "failed", "all-l-vanishing");
            res.outcome = RouteOutcome::Failed;
            res.failed_step = name;
            res.reason = "nonzero higher cohomology at l = " + std::to_string(v.witness->l);
            break;
        }
    }

    bool tilting_step(const std::string& prefix, const LineBundleCollection& c, RouteResult& res) {
        const std::string name = prefix + "/partial_tilting";
        TiltingReport t;
        RouteResult err;
        if (!guarded(name, {{"members", c.members.size()}}, "partial-tilting", err, [&] { t = partial_tilting_check(c); })) {
            res = err;
            return false;
        }
        Json out = tilting_json(t);
        res.artifacts["hom_dims"] = t.hom_dims;
        if (!t.partial_tilting) {
            add(name, {{"members", c.members.size()}}, out, "failed", "partial-tilting");
            res = failed(name, "collection has higher self-extensions");
            return false;
        }
        add(name, {{"members", c.members.size()}}, out, "ok", "partial-tilting");
        return true;
    }

    RouteResult sublattice_route(const std::string& prefix, const Fan& f) {
        RouteResult res;
        const auto& cfg = cert_.config;
        std::optional<LatticeEmbedding> e;
        {
            const std::string name = prefix + "/smoothing_sublattice";
            Json in{{"index_cap", cfg.index_cap}};
            if (!guarded(name, in, "finite-quotient-presentation", res,
                         [&] { e = smoothing_sublattice(f, Int(cfg.index_cap)); }))
                return res;
            if (!e) {
                add(name, in, {{"found", false}}, "failed", "finite-quotient-presentation");
                return failed(name, "no smoothing sublattice up to index " + std::to_string(cfg.index_cap));
            }
            add(name, in, {{"found", true}, {"basis", basis_json(*e)}, {"index", to_json(e->index())}}, "ok",
                "finite-quotient-presentation");
            res.artifacts["sublattice"] = {{"basis", basis_json(*e)}, {"index", to_json(e->index())}};
        }
        {
            AbelianGroup g = lattice_quotient(*e);
            add(prefix + "/quotient_group", Json::object(),
                {{"group", to_json(g)}, {"order", to_json(g.torsion_order())}}, "ok", "finite-quotient-presentation");
            res.artifacts["group"] = {{"torsion", to_json(g.torsion)}, {"order", to_json(g.torsion_order())}};
        }
        SublatticeFan s = fan_in_sublattice(f, *e);
        LineBundleCollection base;
        {
            const std::string name = prefix + "/base_collection";
            Json in{{"rays", to_json(s.fan.rays)}, {"max_cones", cones_json(s.fan.max_cones)}};
            std::optional<LineBundleCollection> found;
            if (!guarded(name, in, "base-collection", res, [&] {
                    if (projective_space_factors(s.fan)) found = product_beilinson_collection(s.fan);
                    else if (s.fan.dim == 2) found = toric_surface_collection(s.fan, {cfg.l_max});
                }))
                return res;
            if (!found) {
                add(name, in, {{"found", false}}, "failed", "base-collection");
                return failed(name, "no base collection for the smooth fan");
            }
            base = *found;
            add(name, in,
                {{"found", true}, {"provenance", to_string(base.provenance)}, {"members", base.members.size()},
                 {"generation_assumed_by", base.generation_assumed_by}},
                "ok", base.generation_assumed_by);
        }
        LineBundleCollection lift = nova_lift(base, *e);
        add(prefix + "/equivariant_lift", {{"base_members", base.members.size()}},
            {{"members", lift.members.size()}}, "ok", "equivariant-lift-of-tilting-objects");
        res.artifacts["collection"] = to_json(lift);
        if (!tilting_step(prefix, lift, res)) return res;
        DivisorClass twist;
        {
            Fan total = canonical_bundle_fan(f);
            Fan total_sub = canonical_bundle_fan_in_sublattice(s);
            ClassGroup cl(s.fan);
            IntVector beta(s.beta.begin(), s.beta.end());
            twist = cl.class_of(beta);
            Json out{{"rays", to_json(total.rays)},
                     {"sublattice_rays", to_json(total_sub.rays)},
                     {"beta", to_json(beta)},
                     {"twist", to_json(twist)}};
            add(prefix + "/canonical_bundle_fan", Json::object(), out, "ok", "sublattice-canonical-bundle-identification");
            res.artifacts["canonical_bundle_fan"] = out;
        }
        vanishing_step(prefix, s.fan, lift, twist, res, false);
        res.assumptions = {"finite-quotient-presentation", "sublattice-canonical-bundle-identification",
                           "equivariant-lift-of-tilting-objects", "affine-bundle-tilting-pullback",
                           base.generation_assumed_by};
        return res;
    }

    RouteResult window_route() {
        RouteResult res;
        LineBundleCollection c;
        {
            Json in{{"rays", to_json(fan_.rays)}};
            if (!guarded("window/window_collection", in, "generation:borisov-hua-window", res,
                         [&] { c = borisov_hua_window(fan_); }))
                return res;
            ClassGroup cl(fan_);
            add("window/window_collection", in,
                {{"members", c.members.size()}, {"free_rank", cl.group().free_rank}}, "ok",
                "generation:borisov-hua-window");
            res.artifacts["collection"] = to_json(c);
        }
        if (!tilting_step("window", c, res)) return res;
        ClassGroup cl(fan_);
        DivisorClass twist = cl.anticanonical();
        {
            Fan total = canonical_bundle_fan(fan_);
            Json out{{"rays", to_json(total.rays)}, {"twist", to_json(twist)}};
            add("window/canonical_bundle_fan", Json::object(), out, "ok", "stacky-affine-bundle-tilting-pullback");
            res.artifacts["canonical_bundle_fan"] = out;
        }
        vanishing_step("window", fan_, c, twist, res, true);
        res.assumptions = {"stacky-affine-bundle-tilting-pullback", "generation:borisov-hua-window"};
        return res;
    }

    RouteResult refinement_route() {
        RouteResult res;
        Fan f = fan_;
        {
            Json in{{"points", to_json(boundary_extra_)}};
            if (!guarded("boundary_refinement/subdivide", in, "star-subdivision-regular-triangulation", res, [&] {
                    for (const auto& b : boundary_extra_) f = star_subdivision(f, b);
                }))
                return res;
            add("boundary_refinement/subdivide", in, {{"rays", to_json(f.rays)}, {"max_cones", cones_json(f.max_cones)}},
                "ok", "star-subdivision-regular-triangulation");
        }
        res = sublattice_route("boundary_refinement", f);
        res.assumptions.push_back("star-subdivision-regular-triangulation");
        res.artifacts["refined_fan"] = to_json(f);
        return res;
    }

    void oracle_audit(const std::string& route, const RouteResult& res) {
        if (!res.vanishing_fan || !res.twist) return;
        const Fan& f = *res.vanishing_fan;
        std::set<DivisorClass> distinct(res.classes.begin(), res.classes.end());
        std::size_t checked = 0, mismatches = 0, skipped = 0;
        Json first = nullptr;
        try {
            ClassGroup cl(f);
            CohomologyEngine engine(f);
            for (const auto& d : distinct)
                for (long l = 0; l <= 2; ++l) {
                    IntVector w = cl.lift(cl.add(d, cl.scale(*res.twist, Int(l))));
                    CohomologyTable a = engine.compute(w);
                    try {
                        CohomologyTable b = brute_force_cohomology(f, w);
                        ++checked;
                        if (!(a == b)) {
                            ++mismatches;
                            if (first.is_null()) first = {{"weil", to_json(w)}, {"engine", a.dims}, {"brute_force", b.dims}};
                        }
                    } catch (const Error&) {
                        ++skipped;
                    }
                }
        } catch (const Error& e) {
            add(route + "/oracle_audit", Json::object(), {{"error", e.what()}}, "failed", "oracle");
            return;
        }
        Json out{{"checked", checked}, {"mismatches", mismatches}, {"skipped", skipped}};
        if (!first.is_null()) out["first_mismatch"] = first;
        add(route + "/oracle_audit", {{"l_range", {0, 2}}}, out, mismatches == 0 ? "ok" : "failed", "oracle");
    }

    LatticePolytope p_, q_;
    Fan fan_;
    NccrCertificate cert_;
    bool subdivided_ = false;
    bool window_eligible_ = false;
    std::vector<IntVector> boundary_extra_;
    std::string conditional_route_;
};

}  // namespace

NccrCertificate certify_nccr(const LatticePolytope& p, const PipelineConfig& config, const std::string& name) {
    Run run(p, config, name);
    try {
        run.execute();
    } catch (const Error& e) {
        NccrCertificate c = std::move(run).finish();
        c.verdict = {VerdictKind::Failed, c.steps.empty() ? "input" : c.steps.back().name,
                     std::string(error_code_name(e.code())) + ": " + e.what()};
        return c;
    } catch (const std::exception& e) {
        NccrCertificate c = std::move(run).finish();
        c.verdict = {VerdictKind::Failed, c.steps.empty() ? "input" : c.steps.back().name, e.what()};
        return c;
    }
    return std::move(run).finish();
}

Json to_json(const PipelineConfig& c) {
    Json j;
    j["l_max"] = c.l_max;
    j["subdivide"] = c.subdivide;
    j["oracle"] = c.oracle;
    j["prefer_window"] = c.prefer_window;
    j["index_cap"] = c.index_cap;
    j["interior_point"] = c.interior_point ? to_json(*c.interior_point) : Json(nullptr);
    return j;
}

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(ErrorCode::Parse, std::string("field ") + key + ": missing");
    return j[key];
}

bool bool_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_boolean()) fail(ErrorCode::Parse, std::string("field ") + key + ": expected a boolean");
    return v.get<bool>();
}

long long_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer()) fail(ErrorCode::Parse, std::string("field ") + key + ": expected an integer");
    return v.get<long>();
}

std::string string_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_string()) fail(ErrorCode::Parse, std::string("field ") + key + ": expected a string");
    return v.get<std::string>();
}

}  // namespace

PipelineConfig config_from_json(const Json& j) {
    PipelineConfig c;
    c.l_max = long_field(j, "l_max");
    c.subdivide = bool_field(j, "subdivide");
    c.oracle = bool_field(j, "oracle");
    c.prefer_window = bool_field(j, "prefer_window");
    c.index_cap = long_field(j, "index_cap");
    const Json& ip = field(j, "interior_point");
    if (!ip.is_null()) c.interior_point = int_vector_from_json(ip, "interior_point");
    return c;
}

Json to_json(const NccrCertificate& c) {
    Json j;
    j["schema"] = c.schema;
    j["name"] = c.name;
    j["dim"] = c.dim;
    j["input_polytope"] = {{"vertices", to_json(c.input_vertices)}};
    j["config"] = to_json(c.config);
    Json steps = Json::array();
    for (const auto& s : c.steps)
        steps.push_back({{"name", s.name}, {"inputs", s.inputs}, {"outputs", s.outputs}, {"status", s.status}, {"ref", s.ref}});
    j["steps"] = steps;
    j["verdict"] = {{"kind", to_string(c.verdict.kind)}, {"step", c.verdict.step}, {"reason", c.verdict.reason}};
    j["assumptions"] = c.assumptions;
    j["artifacts"] = c.artifacts;
    return j;
}

NccrCertificate certificate_from_json(const Json& j) {
    NccrCertificate c;
    c.schema = static_cast<int>(long_field(j, "schema"));
    if (c.schema != 1) fail(ErrorCode::Parse, "field schema: unsupported version");
    c.name = string_field(j, "name");
    c.dim = static_cast<std::size_t>(long_field(j, "dim"));
    const Json& vs = field(field(j, "input_polytope"), "vertices");
    if (!vs.is_array()) fail(ErrorCode::Parse, "field vertices: expected an array");
    for (std::size_t i = 0; i < vs.size(); ++i)
        c.input_vertices.push_back(int_vector_from_json(vs[i], "vertices[" + std::to_string(i) + "]"));
    c.config = config_from_json(field(j, "config"));
    const Json& steps = field(j, "steps");
    if (!steps.is_array()) fail(ErrorCode::Parse, "field steps: expected an array");
    for (const auto& s : steps)
        c.steps.push_back({string_field(s, "name"), field(s, "inputs"), field(s, "outputs"), string_field(s, "status"),
                           string_field(s, "ref")});
    const Json& v = field(j, "verdict");
    c.verdict = {verdict_from_string(string_field(v, "kind")), string_field(v, "step"), string_field(v, "reason")};
    const Json& a = field(j, "assumptions");
    if (!a.is_array()) fail(ErrorCode::Parse, "field assumptions: expected an array");
    for (const auto& t : a) {
        if (!t.is_string()) fail(ErrorCode::Parse, "field assumptions: expected strings");
        c.assumptions.push_back(t.get<std::string>());
    }
    c.artifacts = field(j, "artifacts");
    return c;
}

ReplayResult replay(const NccrCertificate& c) {
    ReplayResult r;
    LatticePolytope p;
    try {
        p = polytope_from_vertices(c.input_vertices, c.dim);
    } catch (const Error& e) {
        r.first_difference = std::string("input: ") + e.what();
        return r;
    }
    if (p.vertices != c.input_vertices) {
        r.first_difference = "input: recorded vertices are not the hull vertices";
        return r;
    }
    NccrCertificate again = certify_nccr(p, c.config, c.name);
    const std::size_t n = std::max(again.steps.size(), c.steps.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= again.steps.size() || i >= c.steps.size()) {
            r.first_difference = "step count " + std::to_string(c.steps.size()) + " vs " + std::to_string(again.steps.size());
            return r;
        }
        const auto& a = c.steps[i];
        const auto& b = again.steps[i];
        if (a.name != b.name || a.inputs.dump() != b.inputs.dump()) {
            r.first_difference = "step " + a.name + ": inputs differ";
            return r;
        }
        if (a.outputs.dump() != b.outputs.dump() || a.status != b.status || a.ref != b.ref) {
            r.first_difference = "step " + a.name + ": outputs differ";
            return r;
        }
    }
    if (!(again.verdict == c.verdict)) {
        r.first_difference = "verdict";
        return r;
    }
    if (again.assumptions != c.assumptions) {
        r.first_difference = "assumptions";
        return r;
    }
    if (again.artifacts.dump() != c.artifacts.dump()) {
        r.first_difference = "artifacts";
        return r;
    }
    r.identical = true;
    return r;
}

bool ExampleReport::passed() const {
    if (checks.empty()) return false;
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

std::vector<std::string> builtin_example_names() {
    return {"beilinson-Pn", "hirzebruch-wp113", "triple-line-quotient", "fms-example", "reflexive-polygons"};
}

std::vector<std::vector<IntVector>> reflexive_polygons() {
    const std::vector<std::vector<std::vector<long>>> raw = {
        {{-3, -2}, {2, 1}, {-1, 0}},
        {{-3, -2}, {3, 1}, {-1, 0}},
        {{-3, -2}, {3, 1}, {0, 1}},
        {{-3, -2}, {1, 0}, {1, 2}},
        {{-3, -2}, {2, 1}, {1, 1}},
        {{-3, -2}, {-1, -1}, {3, 2}, {-2, -1}},
        {{-3, -2}, {1, 0}, {1, 1}, {-2, -1}},
        {{-3, -2}, {1, 0}, {3, 2}, {-2, -1}},
        {{-3, -2}, {3, 1}, {1, 1}, {-2, -1}},
        {{-3, -2}, {2, 1}, {3, 2}, {-2, -1}},
        {{-3, -2}, {1, 0}, {3, 2}, {-1, 0}},
        {{-3, -2}, {3, 1}, {1, 1}, {-1, 0}},
        {{-3, -2}, {-1, -1}, {2, 1}, {1, 1}, {-2, -1}},
        {{-3, -2}, {1, 0}, {2, 1}, {1, 1}, {-2, -1}},
        {{-3, -2}, {1, 0}, {3, 2}, {1, 1}, {-2, -1}},
        {{-3, -2}, {-1, -1}, {2, 1}, {3, 2}, {1, 1}, {-2, -1}},
    };
    std::vector<std::vector<IntVector>> out;
    for (const auto& poly : raw) {
        std::vector<IntVector> vs;
        for (const auto& v : poly) vs.push_back(int_vector(v));
        out.push_back(vs);
    }
    return out;
}

namespace {

void check(ExampleReport& r, const std::string& what, bool ok, const std::string& detail = "") {
    r.checks.push_back({what, ok, detail});
}

std::set<IntVector> ray_set(const Json& rays) {
    std::set<IntVector> s;
    for (std::size_t i = 0; i < rays.size(); ++i) s.insert(int_vector_from_json(rays[i], "ray"));
    return s;
}

std::set<IntVector> expected_rays(const std::vector<std::vector<long>>& rays) {
    std::set<IntVector> s;
    for (const auto& r : rays) s.insert(int_vector(r));
    return s;
}

std::vector<IntVector> vecs(const std::vector<std::vector<long>>& rays) {
    std::vector<IntVector> out;
    for (const auto& r : rays) out.push_back(int_vector(r));
    return out;
}

LatticeEmbedding embedding_of(const std::vector<std::vector<long>>& cols) {
    const std::size_t n = cols.size();
    IntMatrix b(n, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) b(r, c) = cols[c][r];
    return LatticeEmbedding{n, b};
}

const Json* artifact(const NccrCertificate& c, const char* a, const char* b = nullptr) {
    if (!c.artifacts.contains(a)) return nullptr;
    const Json* j = &c.artifacts[a];
    if (b) {
        if (!j->contains(b)) return nullptr;
        j = &(*j)[b];
    }
    return j;
}

std::size_t member_count(const NccrCertificate& c) {
    const Json* m = artifact(c, "collection", "members");
    return m ? m->size() : 0;
}

Int index_of(const NccrCertificate& c) {
    const Json* i = artifact(c, "sublattice", "index");
    return i ? int_from_json(*i, "index") : Int(0);
}

bool certified(const NccrCertificate& c) { return c.verdict.kind == VerdictKind::CertifiedNccr; }

Fan projective_space_fan(std::size_t n) { return beilinson_collection(n).fan; }

void beilinson_example(ExampleReport& r, const PipelineConfig& cfg) {
    for (std::size_t n = 1; n <= 3; ++n) {
        const std::string tag = "P" + std::to_string(n);
        std::vector<IntVector> vs;
        for (std::size_t i = 0; i < n; ++i) {
            IntVector e(n);
            e[i] = 1;
            vs.push_back(e);
        }
        vs.push_back(IntVector(n, Int(-1)));
        NccrCertificate c = certify_nccr(polytope_from_vertices(vs, n), cfg, "beilinson-" + tag);
        check(r, tag + ": certified", certified(c), to_string(c.verdict.kind));
        check(r, tag + ": collection has n+1 members", member_count(c) == n + 1);
        Fan f = projective_space_fan(n);
        CohomologyEngine engine(f);
        bool vanish = true;
        std::vector<DivisorClass> diffs;
        ClassGroup cl(f);
        for (long i = 0; i <= static_cast<long>(n); ++i)
            for (long j = 0; j <= static_cast<long>(n); ++j) {
                IntVector w(f.rays.size());
                w[0] = i - j;
                diffs.push_back(cl.class_of(w));
                for (long k = 1; k <= 5; ++k) {
                    w[0] = i - j + static_cast<long>(n + 1) * k;
                    if (!engine.compute(w).higher_vanish()) vanish = false;
                }
            }
        check(r, tag + ": higher cohomology of i-j+(n+1)k vanishes for k=1..5", vanish);
        auto v = all_l_vanishing_certificate(f, diffs, cl.anticanonical(), cfg.l_max);
        check(r, tag + ": all-l vanishing certificate", v.kind == VanishingCertificate::Kind::CertifiedAllL,
              to_string(v.kind));
        r.certificates.push_back(std::move(c));
    }
    TiltingReport t = partial_tilting_check(beilinson_collection(2));
    check(r, "P2: hom dims [[1,3,6],[0,1,3],[0,0,1]]",
          t.hom_dims == std::vector<std::vector<std::int64_t>>{{1, 3, 6}, {0, 1, 3}, {0, 0, 1}});
}

void wp113_example(ExampleReport& r, const PipelineConfig& cfg) {
    Fan h3 = Fan::make(2, vecs({{1, 0}, {0, -1}, {-1, 3}, {0, 1}}), {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    Fan total = canonical_bundle_fan(h3);
    std::set<IntVector> got(total.rays.begin(), total.rays.end());
    check(r, "canonical bundle fan of H3 has the five expected rays",
          got == expected_rays({{1, 0, 1}, {0, -1, 1}, {-1, 3, 1}, {0, 1, 1}, {0, 0, 1}}), std::to_string(total.rays.size()) + " rays");
    NccrCertificate c = certify_nccr(polytope_from_vertices(vecs({{1, 0}, {0, -1}, {-1, 3}}), 2), cfg, "hirzebruch-wp113");
    check(r, "certified", certified(c), to_string(c.verdict.kind));
    const Json* g = artifact(c, "group", "order");
    check(r, "quotient group has order 3", g && int_from_json(*g, "order") == 3);
    const Json* sub = artifact(c, "canonical_bundle_fan", "sublattice_rays");
    check(r, "quotient fan rays (1,0,1),(0,1,1),(-1,-1,3),(0,0,1)",
          sub && ray_set(*sub) == expected_rays({{1, 0, 1}, {0, 1, 1}, {-1, -1, 3}, {0, 0, 1}}));
    check(r, "lifted collection has 9 members", member_count(c) == 9);
    r.certificates.push_back(std::move(c));
}

void triple_line_example(ExampleReport& r, const PipelineConfig& cfg) {
    auto vs = vecs({{2, 2, 3}, {0, 2, 3}, {1, 3, 3}, {1, 1, 3}, {2, 3, 6}, {0, 1, 0}});
    NccrCertificate c = certify_nccr(polytope_from_vertices(vs, 3), cfg, "triple-line-quotient");
    const Json* ip = artifact(c, "interior_point");
    check(r, "interior point (1,2,3)", ip && int_vector_from_json(*ip, "interior_point") == int_vector({1, 2, 3}));
    const Json* tv = artifact(c, "translated_vertices");
    check(r, "translated vertices", tv && ray_set(*tv) == expected_rays({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0},
                                                                    {1, 1, 3}, {-1, -1, -3}}));
    LatticeEmbedding given = embedding_of({{1, 0, 0}, {0, 1, 0}, {1, 1, 3}});
    LatticePolytope q = translate(polytope_from_vertices(vs, 3), int_vector({1, 2, 3}));
    Fan f = face_fan(q);
    AbelianGroup quot = lattice_quotient(given);
    check(r, "span{(1,0,0),(0,1,0),(1,1,3)} smooths the fan with quotient Z/3",
          is_smooth(f, given) && quot.free_rank == 0 && quot.torsion == int_vector({3}));
    check(r, "certified", certified(c), to_string(c.verdict.kind));
    check(r, "sublattice index 3", index_of(c) == 3);
    check(r, "collection has 24 members", member_count(c) == 24);
    r.certificates.push_back(std::move(c));
}

void fms_example(ExampleReport& r, const PipelineConfig& cfg) {
    auto vs = vecs({{2, 2}, {2, 0}, {0, 0}, {0, -2}});
    NccrCertificate c = certify_nccr(polytope_from_vertices(vs, 2), cfg, "fms-example");
    check(r, "certified", certified(c), to_string(c.verdict.kind));
    check(r, "sublattice index 2", index_of(c) == 2);
    const Json* b = artifact(c, "sublattice", "basis");
    bool same = false;
    if (b) {
        IntMatrix m(2, 2);
        for (std::size_t i = 0; i < 2; ++i) {
            IntVector col = int_vector_from_json((*b)[i], "basis");
            for (std::size_t k = 0; k < 2; ++k) m(k, i) = col[k];
        }
        same = LatticeEmbedding{2, m}.same_lattice(embedding_of({{1, 0}, {1, 2}}));
    }
    check(r, "sublattice is span{(1,0),(1,2)}", same);
    check(r, "collection has 8 members", member_count(c) == 8);
    const Json* tw = artifact(c, "canonical_bundle_fan", "twist");
    check(r, "twist (2,2)", tw && int_vector_from_json((*tw)["free"], "twist") == int_vector({2, 2}));
    const Json* v = artifact(c, "vanishing");
    check(r, "64 difference classes certified for every l",
          v && (*v)["kind"] == "CERTIFIED_ALL_L" && (*v)["classes"] == 64);
    r.certificates.push_back(std::move(c));
}

void polygons_example(ExampleReport& r, PipelineConfig cfg) {
    cfg.prefer_window = true;
    cfg.subdivide = true;
    auto polys = reflexive_polygons();
    std::vector<std::future<NccrCertificate>> jobs;
    for (std::size_t i = 0; i < polys.size(); ++i)
        jobs.push_back(std::async(std::launch::async, [&, i] {
            return certify_nccr(polytope_from_vertices(polys[i], 2), cfg, "reflexive-polygon-" + std::to_string(i + 1));
        }));
    std::size_t ok = 0;
    for (auto& j : jobs) r.certificates.push_back(j.get());
    for (const auto& c : r.certificates) {
        if (certified(c)) ++ok;
        bool window = c.artifacts.contains("route") && c.artifacts["route"] == "window";
        Json rank = nullptr;
        if (const auto* s = c.step("reflexive_check")) rank = s->outputs["fan_class_group"]["free_rank"];
        if (window) {
            const Json* v = artifact(c, "vanishing");
            check(r, c.name + ": window differences avoid every forbidden region",
                  v && v->contains("differences_avoid_regions") && (*v)["differences_avoid_regions"] == true);
        } else {
            check(r, c.name + ": class group rank above 2 uses another route", rank.is_number() && rank.get<long>() > 2,
                  "rank " + rank.dump());
        }
    }
    check(r, "16/16 certified", ok == polys.size(), std::to_string(ok) + "/" + std::to_string(polys.size()));
}

}  // namespace

ExampleReport run_builtin_example(const std::string& name, const PipelineConfig& config) {
    ExampleReport r;
    r.name = name;
    if (name == "beilinson-Pn") beilinson_example(r, config);
    else if (name == "hirzebruch-wp113") wp113_example(r, config);
    else if (name == "triple-line-quotient") triple_line_example(r, config);
    else if (name == "fms-example") fms_example(r, config);
    else if (name == "reflexive-polygons") polygons_example(r, config);
    else fail(ErrorCode::UnknownExample, "unknown example " + name);
    return r;
}

Json to_json(const ExampleReport& r) {
    Json j;
    j["name"] = r.name;
    j["passed"] = r.passed();
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back({{"check", c.description}, {"passed", c.passed}, {"detail", c.detail}});
    j["checks"] = checks;
    Json certs = Json::array();
    for (const auto& c : r.certificates) certs.push_back(to_json(c));
    j["certificates"] = certs;
    return j;
}

namespace {

std::string rays_text(const Json& rays) {
    std::string s;
    for (std::size_t i = 0; i < rays.size(); ++i) {
        if (i) s += ", ";
        s += to_string(int_vector_from_json(rays[i], "ray"));
    }
    return s;
}

}  // namespace

std::string to_text(const NccrCertificate& c) {
    std::string s;
    s += "polytope " + (c.name.empty() ? std::string("(unnamed)") : c.name) + " in dimension " + std::to_string(c.dim) + "\n";
    s += "  vertices: " + rays_text(to_json(c.input_vertices)) + "\n";
    const Json& a = c.artifacts;
    if (a.contains("interior_point")) s += "  interior point: " + rays_text(Json::array({a["interior_point"]})) + "\n";
    if (a.contains("translated_vertices")) s += "  translated vertices: " + rays_text(a["translated_vertices"]) + "\n";
    if (a.contains("fan")) {
        s += "  face fan rays: " + rays_text(a["fan"]["rays"]) + "\n";
        s += "  maximal cones: " + std::to_string(a["fan"]["max_cones"].size()) + "\n";
    }
    if (a.contains("route")) s += "  route: " + a["route"].get<std::string>() + "\n";
    if (a.contains("refined_fan")) s += "  refined fan rays: " + rays_text(a["refined_fan"]["rays"]) + "\n";
    if (a.contains("sublattice")) {
        s += "  sublattice N' spanned by " + rays_text(a["sublattice"]["basis"]) + ", index " +
             a["sublattice"]["index"].dump() + "\n";
    }
    if (a.contains("group")) {
        std::string g;
        for (const auto& t : a["group"]["torsion"]) g += (g.empty() ? "" : " x ") + std::string("Z/") + t.dump();
        s += "  G = N/N' = " + (g.empty() ? std::string("trivial") : g) + "\n";
    }
    if (a.contains("canonical_bundle_fan")) {
        const Json& k = a["canonical_bundle_fan"];
        s += "  canonical bundle fan rays: " + rays_text(k["rays"]) + "\n";
        if (k.contains("sublattice_rays")) s += "  in N' coordinates: " + rays_text(k["sublattice_rays"]) + "\n";
        s += "  twist class: free " + rays_text(Json::array({k["twist"]["free"]}));
        if (!k["twist"]["torsion"].empty()) s += " torsion " + rays_text(Json::array({k["twist"]["torsion"]}));
        s += "\n";
    }
    if (a.contains("collection")) {
        const Json& col = a["collection"];
        s += "  collection: " + std::to_string(col["members"].size()) + " line bundles, provenance " +
             col["provenance"].get<std::string>();
        if (col.contains("base_provenance")) s += " of " + col["base_provenance"].get<std::string>();
        s += "\n";
    }
    if (a.contains("vanishing")) {
        const Json& v = a["vanishing"];
        s += "  vanishing: " + v["kind"].get<std::string>() + " over " + v["classes"].dump() + " difference classes\n";
    }
    for (const auto& st : c.steps)
        if (st.name.find("oracle_audit") != std::string::npos)
            s += "  oracle audit: " + st.outputs.dump() + "\n";
    s += "verdict: " + std::string(to_string(c.verdict.kind)) + " (" + c.verdict.step + ": " + c.verdict.reason + ")\n";
    if (!c.assumptions.empty()) {
        s += "assumptions:";
        for (const auto& t : c.assumptions) s += " " + t;
        s += "\n";
    }
    return s;
}

std::string to_text(const ExampleReport& r) {
    std::string s = "example " + r.name + "\n";
    for (const auto& c : r.certificates) s += to_text(c);
    for (const auto& c : r.checks)
        s += std::string(c.passed ? "  [ok]   " : "  [FAIL] ") + c.description + (c.detail.empty() ? "" : " (" + c.detail + ")") + "\n";
    s += r.passed() ? "all checks passed\n" : "some checks failed\n";
    return s;
}

}  // namespace nccr
