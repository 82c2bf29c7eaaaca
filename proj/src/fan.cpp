#include <nccr/error.hpp>
#include <nccr/fan.hpp>
#include <nccr/polyhedron.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace nccr {

namespace {

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        f(idx);
        std::size_t j = k;
        while (j > 0 && idx[j - 1] == n - k + (j - 1)) --j;
        if (j == 0) return;
        ++idx[j - 1];
        for (std::size_t t = j; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
}

std::vector<RatVector> rat_rows(const std::vector<IntVector>& v) {
    std::vector<RatVector> out;
    for (const auto& x : v) out.push_back(to_rational(x));
    return out;
}

IntMatrix square_from_columns(const std::vector<IntVector>& cols) {
    return IntMatrix::from_columns(cols, cols.empty() ? 0 : cols[0].size());
}

}  // namespace

std::vector<ConeFacet> cone_facets(const Cone& c) {
    const std::size_t n = c.dim;
    if (rank_rational(rat_rows(c.generators)) != n)
        fail(ErrorCode::NotFullDimensional, "cone is not full-dimensional");
    std::vector<ConeFacet> out;
    std::set<IntVector> seen;
    for_each_subset(c.generators.size(), n - 1, [&](const std::vector<std::size_t>& idx) {
        std::vector<RatVector> rows;
        for (auto i : idx) rows.push_back(to_rational(c.generators[i]));
        auto ns = nullspace(rows, n);
        if (ns.size() != 1) return;
        IntVector normal = primitive_direction(ns[0]);
        bool pos = false, neg = false;
        for (const auto& g : c.generators) {
            Int s = dot(normal, g);
            if (s > 0) pos = true;
            if (s < 0) neg = true;
        }
        if (pos && neg) return;
        if (neg)
            for (auto& x : normal) x = -x;
        if (!seen.insert(normal).second) return;
        ConeFacet f{normal, {}};
        for (std::size_t i = 0; i < c.generators.size(); ++i)
            if (dot(normal, c.generators[i]) == 0) f.members.push_back(i);
        out.push_back(std::move(f));
    });
    std::sort(out.begin(), out.end(), [](const ConeFacet& a, const ConeFacet& b) { return a.normal < b.normal; });
    return out;
}

bool cone_contains(const Cone& c, const IntVector& x) {
    for (const auto& f : cone_facets(c))
        if (dot(f.normal, x) < 0) return false;
    return true;
}

Fan Fan::make(std::size_t dim, std::vector<IntVector> rays, std::vector<std::vector<std::size_t>> cones) {
    for (const auto& r : rays) {
        if (r.size() != dim) fail(ErrorCode::DimensionMismatch, "ray " + to_string(r) + " has wrong length");
        if (is_zero(r)) fail(ErrorCode::InvalidArgument, "zero ray");
        if (!is_primitive(r)) fail(ErrorCode::InvalidArgument, "ray " + to_string(r) + " is not primitive");
    }
    std::vector<std::size_t> perm(rays.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return rays[a] < rays[b]; });
    std::vector<std::size_t> where(rays.size());
    Fan f;
    f.dim = dim;
    for (std::size_t k = 0; k < perm.size(); ++k) {
        where[perm[k]] = k;
        if (k > 0 && rays[perm[k]] == rays[perm[k - 1]])
            fail(ErrorCode::InvalidArgument, "duplicate ray " + to_string(rays[perm[k]]));
        f.rays.push_back(rays[perm[k]]);
    }
    std::set<std::vector<std::size_t>> seen;
    for (auto& c : cones) {
        if (c.empty()) fail(ErrorCode::InvalidArgument, "empty cone");
        std::vector<std::size_t> m;
        for (auto i : c) {
            if (i >= rays.size()) fail(ErrorCode::InvalidArgument, "cone refers to a missing ray");
            m.push_back(where[i]);
        }
        std::sort(m.begin(), m.end());
        if (std::adjacent_find(m.begin(), m.end()) != m.end()) fail(ErrorCode::InvalidArgument, "cone repeats a ray");
        seen.insert(std::move(m));
    }
    f.max_cones.assign(seen.begin(), seen.end());
    return f;
}

Cone Fan::cone(std::size_t i) const {
    Cone c{dim, {}};
    for (auto r : max_cones.at(i)) c.generators.push_back(rays[r]);
    return c;
}

std::size_t Fan::ray_index(const IntVector& r) const {
    auto it = std::lower_bound(rays.begin(), rays.end(), r);
    if (it == rays.end() || *it != r) return SIZE_MAX;
    return static_cast<std::size_t>(it - rays.begin());
}

Cone cone_over_polytope(const LatticePolytope& p) {
    Cone c{p.dim + 1, {}};
    for (auto v : p.vertices) {
        v.push_back(1);
        c.generators.push_back(std::move(v));
    }
    return c;
}

Fan face_fan(const LatticePolytope& p) {
    std::vector<std::vector<std::size_t>> cones;
    for (const auto& f : p.facets) cones.push_back(f.vertices);
    return face_fan_from_simplices(p, cones);
}

Fan face_fan_from_simplices(const LatticePolytope& p, const std::vector<std::vector<std::size_t>>& simplices) {
    for (const auto& f : p.facets)
        if (f.offset <= 0) fail(ErrorCode::NoInteriorOrigin, "origin is not an interior point");
    std::vector<IntVector> rays;
    for (const auto& v : p.vertices) rays.push_back(primitive_vector(v));
    return Fan::make(p.dim, rays, simplices);
}

GorensteinElement gorenstein_element(const Cone& c) {
    if (rank_rational(rat_rows(c.generators)) != c.dim)
        fail(ErrorCode::NotFullDimensional, "cone is not full-dimensional");
    RatVector ones(c.generators.size(), Rational(1));
    auto m = solve_rational(rat_rows(c.generators), ones);
    if (!m) fail(ErrorCode::NotQGorenstein, "no linear form takes value 1 on every generator");
    GorensteinElement g{*m, true};
    for (const auto& x : g.m)
        if (x.get_den() != 1) g.integral = false;
    return g;
}

ClassGroup::ClassGroup(const Fan& f) : k_(f.rays.size()) {
    const std::size_t n = f.dim;
    IntMatrix a = IntMatrix::from_rows(f.rays, n);
    if (rank(a) < n) fail(ErrorCode::RaysDoNotSpan, "rays do not span N_R");
    SmithDecomposition s = smith_normal_form(a);
    std::vector<IntVector> unit_rows, free_src;
    for (std::size_t i = 0; i < k_; ++i) {
        if (i < n && s.diag[i] == 1) unit_rows.push_back(s.left.row(i));
        else if (i < n) {
            torsion_rows_.push_back(s.left.row(i));
            group_.torsion.push_back(s.diag[i]);
        } else {
            free_src.push_back(s.left.row(i));
        }
    }
    group_.free_rank = free_src.size();
    if (!free_src.empty()) {
        IntMatrix h = hermite_normal_form(IntMatrix::from_rows(free_src, k_));
        for (std::size_t i = 0; i < h.rows(); ++i) free_rows_.push_back(h.row(i));
    }
    unit_count_ = unit_rows.size();
    std::vector<IntVector> all = unit_rows;
    all.insert(all.end(), torsion_rows_.begin(), torsion_rows_.end());
    all.insert(all.end(), free_rows_.begin(), free_rows_.end());
    std::vector<RatVector> rows = rat_rows(all);
    inverse_ = IntMatrix(k_, k_);
    for (std::size_t c = 0; c < k_; ++c) {
        RatVector e(k_);
        e[c] = 1;
        auto x = solve_rational(rows, e);
        if (!x) fail(ErrorCode::Internal, "class group transform is singular");
        for (std::size_t r = 0; r < k_; ++r) {
            if ((*x)[r].get_den() != 1) fail(ErrorCode::Internal, "class group transform is not unimodular");
            inverse_(r, c) = (*x)[r].get_num();
        }
    }
}

DivisorClass ClassGroup::class_of(const IntVector& weil) const {
    if (weil.size() != k_) fail(ErrorCode::DimensionMismatch, "divisor has wrong number of coefficients");
    DivisorClass c;
    for (const auto& r : free_rows_) c.free.push_back(dot(r, weil));
    for (std::size_t i = 0; i < torsion_rows_.size(); ++i)
        c.torsion.push_back(mod_floor(dot(torsion_rows_[i], weil), group_.torsion[i]));
    return c;
}

IntVector ClassGroup::lift(const DivisorClass& c) const {
    if (c.free.size() != free_rows_.size() || c.torsion.size() != torsion_rows_.size())
        fail(ErrorCode::DimensionMismatch, "class has wrong shape");
    IntVector y(k_);
    for (std::size_t i = 0; i < c.torsion.size(); ++i) y[unit_count_ + i] = c.torsion[i];
    for (std::size_t i = 0; i < c.free.size(); ++i) y[unit_count_ + torsion_rows_.size() + i] = c.free[i];
    return inverse_ * y;
}

DivisorClass ClassGroup::reduce(DivisorClass c) const {
    for (std::size_t i = 0; i < c.torsion.size(); ++i) c.torsion[i] = mod_floor(c.torsion[i], group_.torsion[i]);
    return c;
}

DivisorClass ClassGroup::add(const DivisorClass& a, const DivisorClass& b) const {
    return reduce({nccr::add(a.free, b.free), nccr::add(a.torsion, b.torsion)});
}

DivisorClass ClassGroup::sub(const DivisorClass& a, const DivisorClass& b) const {
    return reduce({nccr::sub(a.free, b.free), nccr::sub(a.torsion, b.torsion)});
}

DivisorClass ClassGroup::scale(const DivisorClass& a, const Int& k) const {
    return reduce({nccr::scale(a.free, k), nccr::scale(a.torsion, k)});
}

DivisorClass ClassGroup::zero() const {
    return {IntVector(free_rows_.size()), IntVector(torsion_rows_.size())};
}

DivisorClass ClassGroup::anticanonical() const { return class_of(IntVector(k_, Int(1))); }

bool is_simplicial(const Fan& f) {
    for (std::size_t i = 0; i < f.max_cones.size(); ++i) {
        const auto& c = f.max_cones[i];
        if (c.size() != f.dim) return false;
        if (rank_rational(rat_rows(f.cone(i).generators)) != f.dim) return false;
    }
    return true;
}

bool is_complete(const Fan& f) {
    if (f.max_cones.empty()) return false;
    std::vector<std::vector<ConeFacet>> facets;
    for (std::size_t i = 0; i < f.max_cones.size(); ++i) {
        Cone c = f.cone(i);
        if (rank_rational(rat_rows(c.generators)) != f.dim) return false;
        facets.push_back(cone_facets(c));
    }
    std::map<std::vector<std::size_t>, std::vector<std::pair<std::size_t, IntVector>>> walls;
    for (std::size_t i = 0; i < facets.size(); ++i)
        for (const auto& fc : facets[i]) {
            std::vector<std::size_t> key;
            for (auto m : fc.members) key.push_back(f.max_cones[i][m]);
            walls[key].push_back({i, fc.normal});
        }
    for (const auto& [key, sides] : walls) {
        if (sides.size() != 2) return false;
        const auto& [a, na] = sides[0];
        const auto& [b, nb] = sides[1];
        if (na != scale(nb, -1)) return false;
        (void)a;
        (void)b;
    }
    for (long t = 1009; t < 1009 + 50; ++t) {
        IntVector probe(f.dim);
        Int p = 1;
        for (std::size_t i = 0; i < f.dim; ++i) {
            probe[i] = (i % 2 == 0) ? p : -p;
            p *= t;
        }
        bool generic = true;
        std::size_t inside = 0;
        for (const auto& fs : facets) {
            bool in = true;
            for (const auto& fc : fs) {
                Int s = dot(fc.normal, probe);
                if (s == 0) generic = false;
                if (s <= 0) in = false;
            }
            if (in) ++inside;
        }
        if (generic) return inside == 1;
    }
    return false;
}

namespace {

// Primitive N'-generators of the rays in N' coordinates.
std::vector<IntVector> sublattice_generators(const Fan& f, const LatticeEmbedding& e, std::vector<Int>* beta) {
    std::vector<IntVector> out;
    for (const auto& u : f.rays) {
        RatVector c = e.rational_coordinates(u);
        Int k = lcm_of_denominators(c);
        IntVector v(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) v[i] = Rational(c[i] * k).get_num();
        if (beta) beta->push_back(k);
        out.push_back(std::move(v));
    }
    return out;
}

bool unimodular_cones(const Fan& f, const std::vector<IntVector>& gens) {
    for (const auto& c : f.max_cones) {
        if (c.size() != f.dim) return false;
        std::vector<IntVector> cols;
        for (auto r : c) cols.push_back(gens[r]);
        if (abs(determinant(square_from_columns(cols))) != 1) return false;
    }
    return true;
}

}  // namespace

bool is_smooth(const Fan& f, const LatticeEmbedding& e) {
    if (!is_simplicial(f)) return false;
    return unimodular_cones(f, sublattice_generators(f, e, nullptr));
}

FanPredicates fan_predicates(const Fan& f, const std::optional<LatticeEmbedding>& e) {
    FanPredicates p;
    p.simplicial = is_simplicial(f);
    p.complete = is_complete(f);
    p.smooth = p.simplicial && is_smooth(f, e ? *e : LatticeEmbedding::identity(f.dim));
    return p;
}

Fan star_subdivision(const Fan& f, const IntVector& point) {
    if (point.size() != f.dim) fail(ErrorCode::DimensionMismatch, "subdivision point has wrong length");
    if (is_zero(point)) fail(ErrorCode::PointOutsideSupport, "cannot subdivide at the origin");
    IntVector r = primitive_vector(point);
    if (f.ray_index(r) != SIZE_MAX) fail(ErrorCode::PointOnExistingRay, "point lies on ray " + to_string(r));
    const std::size_t new_ray = f.rays.size();
    std::vector<std::vector<std::size_t>> cones;
    bool hit = false;
    for (std::size_t i = 0; i < f.max_cones.size(); ++i) {
        Cone c = f.cone(i);
        auto facets = cone_facets(c);
        bool inside = true;
        for (const auto& fc : facets)
            if (dot(fc.normal, point) < 0) inside = false;
        if (!inside) {
            cones.push_back(f.max_cones[i]);
            continue;
        }
        hit = true;
        for (const auto& fc : facets) {
            if (dot(fc.normal, point) == 0) continue;
            std::vector<std::size_t> cone;
            for (auto m : fc.members) cone.push_back(f.max_cones[i][m]);
            cone.push_back(new_ray);
            cones.push_back(std::move(cone));
        }
    }
    if (!hit) fail(ErrorCode::PointOutsideSupport, "point " + to_string(point) + " is outside the support");
    auto rays = f.rays;
    rays.push_back(r);
    return Fan::make(f.dim, rays, cones);
}

Fan canonical_bundle_fan(const Fan& f) {
    if (!is_complete(f)) fail(ErrorCode::NotComplete, "canonical bundle fan needs a complete fan");
    std::vector<IntVector> rays;
    for (auto u : f.rays) {
        u.push_back(1);
        rays.push_back(std::move(u));
    }
    IntVector e(f.dim + 1);
    e[f.dim] = 1;
    rays.push_back(e);
    std::vector<std::vector<std::size_t>> cones;
    for (auto c : f.max_cones) {
        c.push_back(f.rays.size());
        cones.push_back(std::move(c));
    }
    return Fan::make(f.dim + 1, rays, cones);
}

namespace {

void beta_tuples(std::size_t n, const Int& bound, std::vector<Int>& cur, std::vector<std::vector<Int>>& out,
                 const Int& prod) {
    if (cur.size() == n) {
        out.push_back(cur);
        return;
    }
    for (Int b = 1; prod * b <= bound; ++b) {
        cur.push_back(b);
        beta_tuples(n, bound, cur, out, prod * b);
        cur.pop_back();
    }
}

Int product(const std::vector<Int>& v) {
    Int p = 1;
    for (const auto& x : v) p *= x;
    return p;
}

}  // namespace

std::optional<LatticeEmbedding> smoothing_sublattice(const Fan& f, const Int& index_cap) {
    if (!is_simplicial(f)) fail(ErrorCode::NotSimplicial, "smoothing sublattice needs a simplicial fan");
    const std::size_t n = f.dim;
    if (f.max_cones.empty()) return std::nullopt;
    if (unimodular_cones(f, f.rays)) return LatticeEmbedding::identity(n);

    if (f.rays.size() == n + 1 && is_complete(f)) {
        ClassGroup cl(f);
        IntVector lambda = cl.free_rows().at(0);
        std::size_t omit = 0;
        for (std::size_t i = 0; i < lambda.size(); ++i)
            if (abs(lambda[i]) >= abs(lambda[omit])) omit = i;
        std::vector<IntVector> cols;
        for (std::size_t i = 0; i < lambda.size(); ++i)
            if (i != omit) cols.push_back(scale(f.rays[i], abs(lambda[i])));
        LatticeEmbedding e{n, square_from_columns(cols)};
        if (e.index() <= index_cap && is_smooth(f, e)) return e;
    }

    std::vector<IntVector> first;
    for (auto r : f.max_cones[0]) first.push_back(f.rays[r]);
    Int d0 = abs(determinant(square_from_columns(first)));
    if (d0 > index_cap) return std::nullopt;
    std::vector<std::vector<Int>> tuples;
    std::vector<Int> cur;
    beta_tuples(n, index_cap / d0, cur, tuples, Int(1));
    std::stable_sort(tuples.begin(), tuples.end(),
                     [](const auto& a, const auto& b) { return product(a) < product(b); });
    for (const auto& beta : tuples) {
        std::vector<IntVector> cols;
        for (std::size_t i = 0; i < n; ++i) cols.push_back(scale(first[i], beta[i]));
        LatticeEmbedding e{n, square_from_columns(cols)};
        if (is_smooth(f, e)) return e;
    }
    return std::nullopt;
}

SublatticeFan fan_in_sublattice(const Fan& f, const LatticeEmbedding& e) {
    std::vector<Int> beta;
    auto gens = sublattice_generators(f, e, &beta);
    SublatticeFan s{e, Fan::make(f.dim, gens, f.max_cones), {}, {}};
    s.beta.resize(s.fan.rays.size());
    s.source_index.resize(s.fan.rays.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::size_t j = s.fan.ray_index(gens[i]);
        s.source_index[j] = i;
        s.beta[j] = beta[i];
    }
    return s;
}

Fan canonical_bundle_fan_in_sublattice(const SublatticeFan& s) {
    const Fan& f = s.fan;
    if (!is_complete(f)) fail(ErrorCode::NotComplete, "canonical bundle fan needs a complete fan");
    std::vector<IntVector> rays;
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        IntVector u = f.rays[i];
        u.push_back(s.beta[i]);
        rays.push_back(std::move(u));
    }
    IntVector e(f.dim + 1);
    e[f.dim] = 1;
    rays.push_back(e);
    std::vector<std::vector<std::size_t>> cones;
    for (auto c : f.max_cones) {
        c.push_back(f.rays.size());
        cones.push_back(std::move(c));
    }
    return Fan::make(f.dim + 1, rays, cones);
}

Cone dual_cone(const Cone& c) {
    Cone d{c.dim, {}};
    for (const auto& fc : cone_facets(c)) d.generators.push_back(fc.normal);
    return d;
}

WeakFanoReport weak_fano_check(const Fan& f) {
    if (!is_simplicial(f)) fail(ErrorCode::NotSimplicial, "weak Fano check needs a simplicial fan");
    if (!is_complete(f)) fail(ErrorCode::NotComplete, "weak Fano check needs a complete fan");
    const std::size_t n = f.dim;
    std::vector<RatVector> m_sigma;
    for (std::size_t i = 0; i < f.max_cones.size(); ++i) {
        std::vector<RatVector> rows = rat_rows(f.cone(i).generators);
        auto m = solve_rational(rows, RatVector(n, Rational(-1)));
        if (!m) fail(ErrorCode::Internal, "simplicial cone with dependent rays");
        m_sigma.push_back(*m);
    }
    WeakFanoReport r;
    r.nef = true;
    for (std::size_t i = 0; i < f.max_cones.size() && r.nef; ++i)
        for (std::size_t j = 0; j < f.max_cones.size(); ++j) {
            if (i == j) continue;
            std::vector<std::size_t> extra;
            std::set_difference(f.max_cones[j].begin(), f.max_cones[j].end(), f.max_cones[i].begin(),
                                f.max_cones[i].end(), std::back_inserter(extra));
            if (extra.size() != 1) continue;
            if (dot(m_sigma[i], f.rays[extra[0]]) < -1) {
                r.nef = false;
                break;
            }
        }
    LinearSystem p(n);
    for (const auto& u : f.rays) p.add(scale(u, -1), Int(1));
    auto verts = p.vertices();
    if (!verts.empty()) {
        std::vector<RatVector> diffs;
        for (std::size_t i = 1; i < verts.size(); ++i) {
            RatVector d(n);
            for (std::size_t k = 0; k < n; ++k) d[k] = verts[i][k] - verts[0][k];
            diffs.push_back(d);
        }
        r.big = rank_rational(diffs) == n;
    }
    return r;
}

}  // namespace nccr
