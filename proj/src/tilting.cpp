#include <nccr/error.hpp>
#include <nccr/tilting.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace nccr {

const char* to_string(Provenance p) {
    switch (p) {
    case Provenance::Beilinson: return "Beilinson";
    case Provenance::NovaLift: return "NovaLift";
    case Provenance::BorisovHuaWindow: return "BorisovHuaWindow";
    case Provenance::ToricSurface: return "ToricSurface";
    case Provenance::UserSupplied: return "UserSupplied";
    }
    return "?";
}

LineBundleCollection beilinson_collection(std::size_t n) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "projective space of dimension 0");
    std::vector<IntVector> rays;
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n);
        e[i] = 1;
        rays.push_back(e);
    }
    rays.push_back(IntVector(n, Int(-1)));
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t omit = 0; omit <= n; ++omit) {
        std::vector<std::size_t> c;
        for (std::size_t i = 0; i <= n; ++i)
            if (i != omit) c.push_back(i);
        cones.push_back(c);
    }
    return product_beilinson_collection(Fan::make(n, rays, cones));
}

std::optional<std::vector<std::vector<std::size_t>>> projective_space_factors(const Fan& f) {
    if (!is_simplicial(f) || !is_complete(f)) return std::nullopt;
    ClassGroup cl(f);
    if (!cl.group().torsion.empty()) return std::nullopt;
    std::vector<std::vector<std::size_t>> groups;
    std::vector<bool> used(f.rays.size(), false);
    for (const auto& row : cl.free_rows()) {
        std::vector<std::size_t> g;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (row[i] == 0) continue;
            if (row[i] != 1 || used[i]) return std::nullopt;
            used[i] = true;
            g.push_back(i);
        }
        groups.push_back(g);
    }
    if (std::find(used.begin(), used.end(), false) != used.end()) return std::nullopt;
    std::size_t expected = 1;
    for (const auto& g : groups) expected *= g.size();
    if (f.max_cones.size() != expected) return std::nullopt;
    for (const auto& cone : f.max_cones)
        for (const auto& g : groups) {
            std::size_t missing = 0;
            for (auto r : g)
                if (!std::binary_search(cone.begin(), cone.end(), r)) ++missing;
            if (missing != 1) return std::nullopt;
        }
    return groups;
}

LineBundleCollection product_beilinson_collection(const Fan& f) {
    auto groups = projective_space_factors(f);
    if (!groups) fail(ErrorCode::InvalidArgument, "fan is not a product of projective spaces");
    ClassGroup cl(f);
    LineBundleCollection c;
    c.fan = f;
    c.provenance = Provenance::Beilinson;
    c.generation_assumed_by = "generation:beilinson";
    std::vector<std::size_t> idx(groups->size(), 0);
    while (true) {
        IntVector weil(f.rays.size());
        for (std::size_t j = 0; j < idx.size(); ++j) weil[(*groups)[j][0]] = Int(static_cast<long>(idx[j]));
        c.members.push_back({weil, cl.class_of(weil), std::nullopt});
        std::size_t j = idx.size();
        while (j > 0) {
            --j;
            if (++idx[j] < (*groups)[j].size()) break;
            idx[j] = 0;
            if (j == 0) return c;
        }
        if (idx.empty()) return c;
    }
}

LineBundleCollection nova_lift(const LineBundleCollection& base, const LatticeEmbedding& e) {
    CharacterGroup chars(e);
    LineBundleCollection c;
    c.fan = base.fan;
    c.provenance = Provenance::NovaLift;
    c.base_provenance = to_string(base.provenance);
    c.generation_assumed_by = base.generation_assumed_by;
    c.embedding = e;
    std::set<std::pair<DivisorClass, IntVector>> seen;
    for (const auto& m : base.members)
        for (const auto& chi : chars.elements()) {
            if (!seen.insert({m.cls, chi}).second) continue;
            c.members.push_back({m.weil, m.cls, chi});
        }
    return c;
}

LineBundleCollection borisov_hua_window(const Fan& f) {
    ClassGroup cl(f);
    const std::size_t r = cl.group().free_rank;
    if (r > 2) fail(ErrorCode::PicardRankTooHigh, "window construction needs class group rank at most 2");
    if (r == 0) fail(ErrorCode::InvalidArgument, "class group has no free part");
    {
        bool ok = true;
        try {
            LatticePolytope p = polytope_from_vertices(f.rays, f.dim);
            ok = p.vertices == f.rays && is_reflexive(p) && face_fan(p) == f;
        } catch (const Error&) {
            ok = false;
        }
        if (!ok) fail(ErrorCode::NotReflexiveFaceFan, "fan is not the face fan of a reflexive polytope");
    }
    LineBundleCollection c;
    c.fan = f;
    c.provenance = Provenance::BorisovHuaWindow;
    c.generation_assumed_by = "generation:borisov-hua-window";
    const auto torsion = cl.group().torsion_elements();
    auto emit = [&](const IntVector& free) {
        for (const auto& t : torsion) {
            DivisorClass d{free, t};
            c.members.push_back({cl.lift(d), d, std::nullopt});
        }
    };
    if (r == 1) {
        Int total = 0;
        for (std::size_t i = 0; i < f.rays.size(); ++i) {
            IntVector e(f.rays.size());
            e[i] = 1;
            total += cl.class_of(e).free[0];
        }
        for (Int d = 0; d < total; ++d) emit(IntVector{d});
        return c;
    }
    CohomologyEngine engine(f);
    std::vector<std::vector<std::size_t>> halves;
    for (const auto& fr : forbidden_regions(f, cl, engine))
        if (fr.subset.size() < f.rays.size()) halves.push_back(fr.subset);
    if (halves.size() != 2 || halves[0].size() + halves[1].size() != f.rays.size())
        fail(ErrorCode::Internal, "expected two complementary non-acyclic ray subsets");
    auto degree = [&](const std::vector<std::size_t>& s) {
        IntVector e(f.rays.size());
        for (auto i : s) e[i] = 1;
        return cl.class_of(e).free;
    };
    const IntVector alpha = degree(halves[0]), beta = degree(halves[1]);
    const IntVector v = add(alpha, beta);
    // h is constant along the anticanonical direction, g is positive on every boundary divisor
    IntVector h = primitive_vector({-v[1], v[0]});
    if (dot(h, alpha) < 0) h = scale(h, Int(-1));
    std::vector<IntVector> divisors;
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        IntVector e(f.rays.size());
        e[i] = 1;
        divisors.push_back(cl.class_of(e).free);
    }
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        bool plus = std::binary_search(halves[0].begin(), halves[0].end(), i);
        Int hv = dot(h, divisors[i]);
        if (plus ? hv < 0 : hv > 0) fail(ErrorCode::Internal, "forbidden regions admit no parallel supporting lines");
    }
    auto positive = [&](const IntVector& g) {
        for (const auto& d : divisors)
            if (dot(g, d) <= 0) return false;
        return true;
    };
    std::optional<IntVector> g;
    {
        IntVector w = sub(alpha, beta);
        if (!is_zero(w)) {
            IntVector c = primitive_vector({-w[1], w[0]});
            if (positive(c)) g = c;
            else if (positive(scale(c, Int(-1)))) g = scale(c, Int(-1));
        }
    }
    for (long r = 1; r <= 64 && !g; ++r)
        for (long x = -r; x <= r && !g; ++x)
            for (long y : {-(r - std::labs(x)), r - std::labs(x)}) {
                IntVector c = int_vector({x, y});
                if (is_primitive(c) && positive(c)) {
                    g = c;
                    break;
                }
            }
    if (!g) fail(ErrorCode::Internal, "effective cone is not strongly convex");
    // Q = {|h| < h(alpha)/2, |g| < g(alpha+beta)/2}
    const Rational ha(dot(h, alpha), 2), gb(dot(*g, v), 2);
    const Int area = abs(alpha[0] * beta[1] - alpha[1] * beta[0]);
    std::vector<RatVector> rows = {to_rational(h), to_rational(*g)};
    Rational bound = 0;
    for (int sh : {-1, 1})
        for (int sg : {-1, 1}) {
            auto corner = solve_rational(rows, {ha * sh, gb * sg});
            for (const auto& x : *corner) bound = std::max(bound, Rational(abs(x)));
        }
    const Int box = ceil_of(bound) + 1;
    const std::vector<std::pair<long, long>> directions = {{1, 1}, {1, 2}, {2, 1}, {1, 3}};
    for (long denom = 2 * area.get_si() + 2; denom < (1L << 40); denom *= 2)
        for (const auto& [dx, dy] : directions) {
            RatVector p = {Rational(dx, denom), Rational(dy, denom)};
            std::vector<IntVector> pts;
            bool boundary = false;
            for (Int x = -box; x <= box && !boundary; ++x)
                for (Int y = -box; y <= box; ++y) {
                    RatVector q = {Rational(x) - p[0], Rational(y) - p[1]};
                    Rational hq = abs(dot(q, h)), gq = abs(dot(q, *g));
                    if (hq > ha || gq > gb) continue;
                    if (hq == ha || gq == gb) {
                        boundary = true;
                        break;
                    }
                    pts.push_back({x, y});
                }
            if (boundary || Int(static_cast<long>(pts.size())) != area) continue;
            for (const auto& x : pts) emit(x);
            return c;
        }
    fail(ErrorCode::Internal, "no generic offset found for the window");
}

namespace {

using TableCache = std::map<DivisorClass, CohomologyTable>;

const CohomologyTable& cached(TableCache& cache, const CohomologyEngine& engine, const ClassGroup& cl,
                              const DivisorClass& d) {
    auto it = cache.find(d);
    if (it == cache.end()) it = cache.emplace(d, engine.compute(cl.lift(d))).first;
    return it->second;
}

}  // namespace

std::optional<LineBundleCollection> toric_surface_collection(const Fan& f, SurfaceSearchOptions opts) {
    if (f.dim != 2 || !is_complete(f) || !is_smooth(f, LatticeEmbedding::identity(2))) return std::nullopt;
    const std::size_t k = f.rays.size();
    if (k > 12) return std::nullopt;
    ClassGroup cl(f);
    CohomologyEngine engine(f);
    auto regions = forbidden_regions(f, cl, engine);
    const DivisorClass twist = cl.anticanonical();
    std::set<DivisorClass> cand_set;
    for (RaySet s = 0; s < (RaySet{1} << k); ++s) {
        IntVector e(k);
        for (std::size_t i = 0; i < k; ++i)
            if (s >> i & 1) e[i] = 1;
        cand_set.insert(cl.class_of(e));
    }
    std::vector<DivisorClass> cand(cand_set.begin(), cand_set.end());
    const DivisorClass zero = cl.zero();
    std::size_t zero_idx = static_cast<std::size_t>(std::find(cand.begin(), cand.end(), zero) - cand.begin());
    TableCache cache;
    std::map<DivisorClass, bool> twist_ok;
    auto diff_ok = [&](const DivisorClass& d) {
        if (!cached(cache, engine, cl, d).higher_vanish()) return false;
        auto it = twist_ok.find(d);
        if (it == twist_ok.end()) {
            auto cert = all_l_vanishing_certificate(engine, cl, regions, {d}, twist, opts.l_max);
            it = twist_ok.emplace(d, cert.kind == VanishingCertificate::Kind::CertifiedAllL).first;
        }
        return it->second;
    };
    const std::size_t n = cand.size();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            DivisorClass ij = cl.sub(cand[j], cand[i]), ji = cl.sub(cand[i], cand[j]);
            if (!diff_ok(ij) || !diff_ok(ji)) continue;
            if (!cached(cache, engine, cl, ij).all_vanish() && !cached(cache, engine, cl, ji).all_vanish()) continue;
            adj[i][j] = adj[j][i] = true;
        }
    const std::size_t target = f.max_cones.size();
    // before[i][j]: i must precede j
    auto order = [&](const std::vector<std::size_t>& members) -> std::optional<std::vector<std::size_t>> {
        std::vector<std::size_t> out, rest = members;
        while (!rest.empty()) {
            bool progressed = false;
            for (std::size_t a = 0; a < rest.size(); ++a) {
                bool source = true;
                for (std::size_t b = 0; b < rest.size() && source; ++b) {
                    if (a == b) continue;
                    if (!cached(cache, engine, cl, cl.sub(cand[rest[a]], cand[rest[b]])).all_vanish()) source = false;
                }
                if (source) {
                    out.push_back(rest[a]);
                    rest.erase(rest.begin() + static_cast<long>(a));
                    progressed = true;
                    break;
                }
            }
            if (!progressed) return std::nullopt;
        }
        return out;
    };
    std::vector<std::size_t> clique = {zero_idx};
    std::optional<std::vector<std::size_t>> found;
    std::function<void(std::size_t)> grow = [&](std::size_t start) {
        if (found) return;
        if (clique.size() == target) {
            found = order(clique);
            return;
        }
        for (std::size_t v = start; v < n && !found; ++v) {
            if (v == zero_idx) continue;
            bool ok = true;
            for (auto u : clique)
                if (!adj[u][v]) ok = false;
            if (!ok) continue;
            clique.push_back(v);
            grow(v + 1);
            clique.pop_back();
        }
    };
    grow(0);
    if (!found) return std::nullopt;
    LineBundleCollection c;
    c.fan = f;
    c.provenance = Provenance::ToricSurface;
    c.generation_assumed_by = "generation:hille-perling-surfaces";
    for (auto i : *found) c.members.push_back({cl.lift(cand[i]), cand[i], std::nullopt});
    return c;
}

std::vector<DivisorClass> difference_classes(const LineBundleCollection& c) {
    ClassGroup cl(c.fan);
    std::vector<DivisorClass> out;
    for (const auto& a : c.members)
        for (const auto& b : c.members) out.push_back(cl.sub(b.cls, a.cls));
    return out;
}

TiltingReport partial_tilting_check(const LineBundleCollection& c) {
    ClassGroup cl(c.fan);
    CohomologyEngine engine(c.fan);
    const std::size_t n = c.members.size();
    TiltingReport rep;
    rep.partial_tilting = true;
    rep.hom_dims.assign(n, std::vector<std::int64_t>(n, 0));
    auto record = [&](std::size_t a, std::size_t b, const CohomologyTable& t) {
        rep.hom_dims[a][b] = t.dims[0];
        for (std::size_t i = 1; i < t.dims.size(); ++i)
            if (t.dims[i] != 0 && !rep.witness) {
                rep.partial_tilting = false;
                rep.witness = ExtWitness{a, b, i, t.dims[i]};
            }
    };
    if (c.embedding) {
        CharacterGroup chars(*c.embedding);
        std::map<std::pair<IntVector, IntVector>, std::map<IntVector, CohomologyTable>> cache;
        const CohomologyTable zero{std::vector<std::int64_t>(c.fan.dim + 1, 0)};
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const auto& ma = c.members[a];
                const auto& mb = c.members[b];
                auto key = std::make_pair(ma.weil, mb.weil);
                auto it = cache.find(key);
                if (it == cache.end())
                    it = cache.emplace(key, cohomology_by_character(engine, chars, sub(mb.weil, ma.weil))).first;
                IntVector chi = chars.sub(*ma.character, *mb.character);
                auto t = it->second.find(chi);
                record(a, b, t == it->second.end() ? zero : t->second);
            }
        return rep;
    }
    TableCache cache;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            record(a, b, cached(cache, engine, cl, cl.sub(c.members[b].cls, c.members[a].cls)));
    return rep;
}

}  // namespace nccr
