#include <nccr/cohomology.hpp>
#include <nccr/error.hpp>

#include <algorithm>
#include <set>

namespace nccr {

std::vector<std::size_t> reduced_betti(const Fan& f, RaySet subset) {
    const std::size_t n = f.dim;
    std::vector<std::set<RaySet>> faces(n + 1);  // faces[p] holds p-simplices, p = 0..n-1 stored at p
    for (const auto& cone : f.max_cones) {
        if (cone.size() != n) fail(ErrorCode::NotSimplicial, "homology of a non-simplicial fan");
        RaySet c = 0;
        for (auto r : cone)
            if (subset >> r & 1) c |= RaySet{1} << r;
        for (RaySet s = c; s; s = (s - 1) & c) faces[__builtin_popcountll(s) - 1].insert(s);
    }
    // chain dimension of C_p for p = -1 .. n-1, stored at p+1
    std::vector<std::size_t> dim(n + 1);
    dim[0] = 1;
    for (std::size_t p = 0; p < n; ++p) dim[p + 1] = faces[p].size();
    // rank of boundary C_p -> C_{p-1}, stored at p+1 (p >= 0)
    std::vector<std::size_t> rk(n + 2, 0);
    for (std::size_t p = 0; p < n; ++p) {
        if (faces[p].empty()) continue;
        std::vector<RaySet> lower;
        if (p == 0) lower.push_back(0);
        else lower.assign(faces[p - 1].begin(), faces[p - 1].end());
        std::vector<RatVector> rows;
        for (RaySet s : faces[p]) {
            RatVector row(lower.size());
            int sign = 1;
            for (RaySet b = s; b; b &= b - 1) {
                RaySet bit = b & (~b + 1);
                RaySet face = s & ~bit;
                auto it = std::lower_bound(lower.begin(), lower.end(), face);
                row[static_cast<std::size_t>(it - lower.begin())] = sign;
                sign = -sign;
            }
            rows.push_back(std::move(row));
        }
        rk[p + 1] = rank_rational(std::move(rows));
    }
    std::vector<std::size_t> betti(n + 1);
    for (std::size_t j = 0; j <= n; ++j) betti[j] = dim[j] - rk[j] - rk[j + 1];
    return betti;
}

bool CohomologyTable::higher_vanish() const {
    for (std::size_t i = 1; i < dims.size(); ++i)
        if (dims[i] != 0) return false;
    return true;
}

bool CohomologyTable::all_vanish() const {
    for (auto d : dims)
        if (d != 0) return false;
    return true;
}

CohomologyEngine::CohomologyEngine(const Fan& f, CohomologyOptions opts) : fan_(f) {
    if (!is_simplicial(f)) fail(ErrorCode::NotSimplicial, "cohomology needs a simplicial fan");
    if (!is_complete(f)) fail(ErrorCode::NotComplete, "cohomology needs a complete fan");
    const std::size_t k = f.rays.size();
    if (k > opts.max_rays || k >= 63)
        fail(ErrorCode::TooManyRays, "fan has " + std::to_string(k) + " rays, limit is " + std::to_string(opts.max_rays));
    for (RaySet s = 0; s < (RaySet{1} << k); ++s) {
        auto b = reduced_betti(f, s);
        if (std::any_of(b.begin(), b.end(), [](std::size_t x) { return x != 0; })) nonacyclic_.push_back({s, b});
    }
}

LinearSystem CohomologyEngine::weight_region(RaySet s, const IntVector& weil) const {
    LinearSystem sys(fan_.dim);
    for (std::size_t r = 0; r < fan_.rays.size(); ++r) {
        if (s >> r & 1) sys.add(fan_.rays[r], -weil[r] - 1);
        else sys.add(scale(fan_.rays[r], -1), weil[r]);
    }
    return sys;
}

void CohomologyEngine::for_each_weight(
    const IntVector& weil, const std::function<void(const IntVector&, std::size_t, std::size_t)>& visit) const {
    if (weil.size() != fan_.rays.size()) fail(ErrorCode::DimensionMismatch, "divisor has wrong number of coefficients");
    for (const auto& sub : nonacyclic_) {
        LinearSystem region = weight_region(sub.rays, weil);
        try {
            region.for_each_lattice_point([&](const IntVector& m) {
                for (std::size_t i = 0; i < sub.betti.size(); ++i)
                    if (sub.betti[i]) visit(m, i, sub.betti[i]);
            });
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Internal) throw;
            fail(ErrorCode::Internal, "unbounded chamber for a non-acyclic ray subset");
        }
    }
}

CohomologyTable CohomologyEngine::compute(const IntVector& weil) const {
    CohomologyTable t{std::vector<std::int64_t>(fan_.dim + 1, 0)};
    for_each_weight(weil, [&](const IntVector&, std::size_t i, std::size_t mult) { t.dims[i] += mult; });
    return t;
}

CohomologyTable line_bundle_cohomology(const Fan& f, const IntVector& weil) { return CohomologyEngine(f).compute(weil); }

CohomologyTable brute_force_cohomology(const Fan& f, const IntVector& weil) {
    if (!is_simplicial(f)) fail(ErrorCode::NotSimplicial, "cohomology needs a simplicial fan");
    if (!is_complete(f)) fail(ErrorCode::NotComplete, "cohomology needs a complete fan");
    const std::size_t n = f.dim, k = f.rays.size();
    if (weil.size() != k) fail(ErrorCode::DimensionMismatch, "divisor has wrong number of coefficients");
    if (k >= 63) fail(ErrorCode::TooManyRays, "too many rays");
    std::vector<std::pair<IntVector, Int>> planes;
    for (std::size_t r = 0; r < k; ++r) {
        planes.push_back({f.rays[r], -weil[r]});
        planes.push_back({f.rays[r], -weil[r] - 1});
    }
    std::vector<Int> lo(n), hi(n);
    bool any = false;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    const std::size_t m = planes.size();
    while (true) {
        std::vector<RatVector> a;
        RatVector b;
        for (auto i : idx) {
            a.push_back(to_rational(planes[i].first));
            b.emplace_back(planes[i].second);
        }
        if (rank_rational(a) == n) {
            auto x = solve_rational(a, b);
            for (std::size_t c = 0; c < n; ++c) {
                Int fl = floor_of((*x)[c]), ce = ceil_of((*x)[c]);
                if (!any || fl < lo[c]) lo[c] = fl;
                if (!any || ce > hi[c]) hi[c] = ce;
            }
            any = true;
        }
        std::size_t j = n;
        while (j > 0 && idx[j - 1] == m - n + (j - 1)) --j;
        if (j == 0) break;
        ++idx[j - 1];
        for (std::size_t t = j; t < n; ++t) idx[t] = idx[t - 1] + 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        lo[c] -= 1;
        hi[c] += 1;
    }
    std::map<RaySet, std::vector<std::size_t>> cache;
    CohomologyTable t{std::vector<std::int64_t>(n + 1, 0)};
    IntVector p = lo;
    while (true) {
        RaySet s = 0;
        for (std::size_t r = 0; r < k; ++r)
            if (dot(f.rays[r], p) < -weil[r]) s |= RaySet{1} << r;
        auto it = cache.find(s);
        if (it == cache.end()) it = cache.emplace(s, reduced_betti(f, s)).first;
        bool contributes = false;
        for (std::size_t i = 0; i <= n; ++i)
            if (it->second[i]) {
                t.dims[i] += static_cast<std::int64_t>(it->second[i]);
                contributes = true;
            }
        if (contributes)
            for (std::size_t c = 0; c < n; ++c)
                if (p[c] == lo[c] || p[c] == hi[c])
                    fail(ErrorCode::BoxTooSmall, "non-acyclic weight " + to_string(p) + " on the box boundary");
        std::size_t c = n;
        while (c > 0) {
            --c;
            if (p[c] < hi[c]) {
                ++p[c];
                break;
            }
            p[c] = lo[c];
            if (c == 0) return t;
        }
        if (n == 0) return t;
    }
}

CharacterGroup::CharacterGroup(const LatticeEmbedding& e) {
    SmithDecomposition s = smith_normal_form(e.basis.transpose());
    for (std::size_t i = 0; i < s.diag.size(); ++i) {
        if (s.diag[i] == 0) fail(ErrorCode::Degenerate, "sublattice is not full rank");
        if (s.diag[i] > 1) {
            rows_.push_back(s.left.row(i));
            group_.torsion.push_back(s.diag[i]);
        }
    }
}

IntVector CharacterGroup::character_of(const IntVector& weight) const {
    IntVector c;
    for (std::size_t i = 0; i < rows_.size(); ++i) c.push_back(mod_floor(dot(rows_[i], weight), group_.torsion[i]));
    return c;
}

IntVector CharacterGroup::add(const IntVector& a, const IntVector& b) const {
    IntVector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = mod_floor(a[i] + b[i], group_.torsion[i]);
    return c;
}

IntVector CharacterGroup::sub(const IntVector& a, const IntVector& b) const {
    IntVector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = mod_floor(a[i] - b[i], group_.torsion[i]);
    return c;
}

void CharacterGroup::validate(const IntVector& chi) const {
    if (chi.size() != group_.torsion.size())
        fail(ErrorCode::InvalidCharacter, "character has " + std::to_string(chi.size()) + " entries, expected " +
                                              std::to_string(group_.torsion.size()));
    for (std::size_t i = 0; i < chi.size(); ++i)
        if (chi[i] < 0 || chi[i] >= group_.torsion[i])
            fail(ErrorCode::InvalidCharacter, "character entry out of range");
}

std::map<IntVector, CohomologyTable> cohomology_by_character(const CohomologyEngine& engine,
                                                             const CharacterGroup& chars, const IntVector& weil) {
    std::map<IntVector, CohomologyTable> out;
    const std::size_t n = engine.fan().dim;
    engine.for_each_weight(weil, [&](const IntVector& m, std::size_t i, std::size_t mult) {
        auto& t = out[chars.character_of(m)];
        if (t.dims.empty()) t.dims.assign(n + 1, 0);
        t.dims[i] += static_cast<std::int64_t>(mult);
    });
    return out;
}

CohomologyTable equivariant_invariants(const Fan& sublattice_fan, const LatticeEmbedding& e, const IntVector& weil,
                                       const IntVector& character) {
    CharacterGroup chars(e);
    chars.validate(character);
    CohomologyEngine engine(sublattice_fan);
    auto by = cohomology_by_character(engine, chars, weil);
    auto it = by.find(character);
    if (it == by.end()) return {std::vector<std::int64_t>(sublattice_fan.dim + 1, 0)};
    return it->second;
}

std::vector<ForbiddenRegion> forbidden_regions(const Fan& f, const ClassGroup& cl, const CohomologyEngine& engine) {
    const std::size_t n = f.dim, k = f.rays.size();
    const auto& free_rows = cl.free_rows();
    const std::size_t r = free_rows.size();
    std::vector<RatVector> basis_cols(k, RatVector(r));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < r; ++j) basis_cols[i][j] = free_rows[j][i];
    std::vector<ForbiddenRegion> out;
    for (const auto& sub : engine.nonacyclic()) {
        if (sub.rays == 0) continue;
        ForbiddenRegion fr;
        for (std::size_t i = 1; i < sub.betti.size(); ++i)
            if (sub.betti[i]) fr.degrees.push_back(i);
        if (fr.degrees.empty()) continue;
        for (std::size_t i = 0; i < k; ++i)
            if (sub.rays >> i & 1) fr.subset.push_back(i);
        LinearSystem sys(n + k);
        for (std::size_t i = 0; i < k; ++i) {
            IntVector a(n + k);
            bool in = sub.rays >> i & 1;
            for (std::size_t c = 0; c < n; ++c) a[c] = in ? f.rays[i][c] : -f.rays[i][c];
            a[n + i] = in ? 1 : -1;
            sys.add(std::move(a), in ? Int(-1) : Int(0));
        }
        for (std::size_t v = n; v-- > 0;) sys = sys.eliminate(v);
        if (!sys.feasible()) continue;
        LinearSystem region(r);
        for (const auto& h : sys.rows()) {
            auto y = solve_rational(basis_cols, to_rational(h.a));
            if (!y) fail(ErrorCode::Internal, "projected inequality is not a relation functional");
            region.add(*y, Rational(h.b));
        }
        bool changed = true;
        while (changed) {
            changed = false;
            const auto& rows = region.rows();
            for (std::size_t i = 0; i < rows.size(); ++i) {
                LinearSystem rest(r);
                for (std::size_t j = 0; j < rows.size(); ++j)
                    if (j != i) rest.add(rows[j].a, rows[j].b);
                Interval range = rest.range_of(to_rational(rows[i].a));
                if (range.hi && *range.hi <= Rational(rows[i].b)) {
                    region = rest;
                    changed = true;
                    break;
                }
            }
        }
        fr.region = std::move(region);
        out.push_back(std::move(fr));
    }
    return out;
}

std::vector<ForbiddenRegion> forbidden_regions(const Fan& f) {
    ClassGroup cl(f);
    CohomologyEngine engine(f);
    return forbidden_regions(f, cl, engine);
}

bool in_region(const ForbiddenRegion& r, const DivisorClass& c) { return r.region.contains(c.free); }

std::optional<RayEntry> ray_entry(const ForbiddenRegion& r, std::size_t index, const DivisorClass& x,
                                  const DivisorClass& t) {
    std::optional<Rational> lo = Rational(1), hi;
    for (const auto& h : r.region.rows()) {
        Int coef = dot(h.a, t.free);
        Int rhs = h.b - dot(h.a, x.free);
        if (coef == 0) {
            if (rhs < 0) return std::nullopt;
            continue;
        }
        Rational bound(rhs, coef);
        bound.canonicalize();
        if (coef > 0) {
            if (!hi || bound < *hi) hi = bound;
        } else if (bound > *lo) {
            lo = bound;
        }
    }
    Int first = ceil_of(*lo);
    if (hi && first > floor_of(*hi)) return std::nullopt;
    RayEntry e{index, first, std::nullopt};
    if (hi) e.last = floor_of(*hi);
    return e;
}

const char* to_string(VanishingCertificate::Kind k) {
    switch (k) {
    case VanishingCertificate::Kind::CertifiedAllL: return "CERTIFIED_ALL_L";
    case VanishingCertificate::Kind::CheckedUpTo: return "CHECKED_UP_TO";
    case VanishingCertificate::Kind::Failed: return "FAILED";
    }
    return "?";
}

VanishingCertificate all_l_vanishing_certificate(const CohomologyEngine& engine, const ClassGroup& cl,
                                                 const std::vector<ForbiddenRegion>& regions,
                                                 const std::vector<DivisorClass>& classes, const DivisorClass& twist,
                                                 long l_max) {
    if (is_zero(twist.free)) fail(ErrorCode::ZeroTwist, "twist has zero free part");
    if (l_max < 1) fail(ErrorCode::InvalidArgument, "l_max must be positive");
    VanishingCertificate cert;
    cert.l_max = l_max;
    bool any_entry = false, all_escape = true;
    for (const auto& x : classes) {
        ClassEvidence ev{x, {}, true};
        for (std::size_t i = 0; i < regions.size(); ++i) {
            auto e = ray_entry(regions[i], i, x, twist);
            if (!e) continue;
            if (!e->last || *e->last > l_max) ev.escape_proved = false;
            ev.entries.push_back(*e);
        }
        if (!ev.entries.empty()) any_entry = true;
        all_escape = all_escape && ev.escape_proved;
        cert.evidence.push_back(std::move(ev));
    }
    if (!any_entry) {
        cert.kind = VanishingCertificate::Kind::CertifiedAllL;
        cert.escape_proved = true;
        return cert;
    }
    const IntVector t_lift = cl.lift(twist);
    for (std::size_t ci = 0; ci < cert.evidence.size(); ++ci) {
        const auto& ev = cert.evidence[ci];
        std::set<long> ls;
        for (const auto& e : ev.entries) {
            Int stop = e.last ? std::min(*e.last, Int(l_max)) : Int(l_max);
            for (Int l = e.first; l <= stop; ++l) ls.insert(l.get_si());
        }
        const IntVector x_lift = cl.lift(ev.cls);
        for (long l : ls) {
            CohomologyTable t = engine.compute(add(x_lift, scale(t_lift, Int(l))));
            for (std::size_t i = 1; i < t.dims.size(); ++i)
                if (t.dims[i] != 0) {
                    cert.kind = VanishingCertificate::Kind::Failed;
                    cert.witness = VanishingWitness{ci, l, i, t.dims[i]};
                    return cert;
                }
        }
    }
    cert.kind = VanishingCertificate::Kind::CheckedUpTo;
    cert.escape_proved = all_escape;
    return cert;
}

VanishingCertificate all_l_vanishing_certificate(const Fan& f, const std::vector<DivisorClass>& classes,
                                                 const DivisorClass& twist, long l_max) {
    ClassGroup cl(f);
    CohomologyEngine engine(f);
    return all_l_vanishing_certificate(engine, cl, forbidden_regions(f, cl, engine), classes, twist, l_max);
}

}  // namespace nccr
