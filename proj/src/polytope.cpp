#include <nccr/error.hpp>
#include <nccr/lattice.hpp>
#include <nccr/polyhedron.hpp>
#include <nccr/polytope.hpp>

#include <algorithm>
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

RatVector diff(const RatVector& a, const RatVector& b) {
    RatVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

// Coordinates of a point subset inside its own affine hull.
std::vector<RatVector> affine_coordinates(const std::vector<RatVector>& pts, std::size_t& d) {
    std::vector<RatVector> basis;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        auto cand = basis;
        cand.push_back(diff(pts[i], pts[0]));
        if (rank_rational(cand) == cand.size()) basis = std::move(cand);
    }
    d = basis.size();
    const std::size_t n = pts[0].size();
    std::vector<RatVector> cols(n, RatVector(d));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c) cols[r][c] = basis[c][r];
    std::vector<RatVector> out;
    for (const auto& p : pts) {
        auto x = solve_rational(cols, diff(p, pts[0]));
        if (!x) fail(ErrorCode::Internal, "point outside its affine hull");
        out.push_back(*x);
    }
    return out;
}

RatVector rat(const IntVector& v) { return to_rational(v); }

}  // namespace

std::vector<RationalFacet> hull_facets(const std::vector<RatVector>& points, std::size_t d) {
    std::vector<RationalFacet> out;
    if (d == 0 || points.size() < d) return out;
    std::set<IntVector> seen;
    for_each_subset(points.size(), d, [&](const std::vector<std::size_t>& idx) {
        std::vector<RatVector> rows;
        for (std::size_t i = 1; i < idx.size(); ++i) rows.push_back(diff(points[idx[i]], points[idx[0]]));
        auto ns = nullspace(rows, d);
        if (ns.size() != 1) return;
        IntVector n = primitive_direction(ns[0]);
        Rational c = dot(points[idx[0]], n);
        bool pos = false, neg = false;
        for (const auto& p : points) {
            Rational s = dot(p, n) - c;
            if (s > 0) pos = true;
            if (s < 0) neg = true;
            if (pos && neg) return;
        }
        if (neg) {
            for (auto& x : n) x = -x;
            c = -c;
        }
        if (!seen.insert(n).second) return;
        RationalFacet f{n, c, {}};
        for (std::size_t i = 0; i < points.size(); ++i)
            if (dot(points[i], n) == c) f.points.push_back(i);
        out.push_back(std::move(f));
    });
    return out;
}

std::size_t affine_dimension(const std::vector<IntVector>& points) {
    if (points.empty()) return 0;
    std::vector<RatVector> rows;
    for (std::size_t i = 1; i < points.size(); ++i) rows.push_back(rat(sub(points[i], points[0])));
    return rank_rational(rows);
}

HullResult convex_hull(const std::vector<IntVector>& input, std::size_t dim) {
    for (const auto& p : input)
        if (p.size() != dim) fail(ErrorCode::DimensionMismatch, "point " + to_string(p) + " has wrong length");
    std::vector<IntVector> pts = input;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.empty() || affine_dimension(pts) < dim)
        fail(ErrorCode::Degenerate, "points do not span a full-dimensional polytope");
    std::vector<RatVector> rp;
    for (const auto& p : pts) rp.push_back(rat(p));
    auto facets = hull_facets(rp, dim);
    std::vector<bool> is_vertex(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<RatVector> normals;
        for (const auto& f : facets)
            if (std::binary_search(f.points.begin(), f.points.end(), i)) normals.push_back(rat(f.normal));
        is_vertex[i] = rank_rational(normals) == dim;
    }
    HullResult res;
    res.polytope.dim = dim;
    std::vector<std::size_t> new_index(pts.size(), SIZE_MAX);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (is_vertex[i]) {
            new_index[i] = res.polytope.vertices.size();
            res.polytope.vertices.push_back(pts[i]);
        }
    }
    for (const auto& p : input)
        if (!std::binary_search(res.polytope.vertices.begin(), res.polytope.vertices.end(), p))
            res.dropped.push_back(p);
    for (const auto& f : facets) {
        Facet g{f.normal, -Int(f.rhs.get_num()), {}};
        for (auto i : f.points)
            if (is_vertex[i]) g.vertices.push_back(new_index[i]);
        res.polytope.facets.push_back(std::move(g));
    }
    std::sort(res.polytope.facets.begin(), res.polytope.facets.end(),
              [](const Facet& a, const Facet& b) { return a.normal < b.normal; });
    return res;
}

LatticePolytope polytope_from_vertices(const std::vector<IntVector>& points, std::size_t dim) {
    return convex_hull(points, dim).polytope;
}

namespace {

LinearSystem polytope_system(const LatticePolytope& p, long shift) {
    LinearSystem s(p.dim);
    for (const auto& f : p.facets) s.add(scale(f.normal, -1), f.offset - shift);
    return s;
}

std::vector<IntVector> collect(const LinearSystem& s) {
    std::vector<IntVector> out;
    s.for_each_lattice_point([&](const IntVector& x) { out.push_back(x); });
    return out;
}

}  // namespace

std::vector<IntVector> lattice_points(const LatticePolytope& p) { return collect(polytope_system(p, 0)); }

std::vector<IntVector> interior_lattice_points(const LatticePolytope& p) { return collect(polytope_system(p, 1)); }

std::vector<IntVector> boundary_lattice_points(const LatticePolytope& p) {
    std::vector<IntVector> out;
    for (const auto& x : lattice_points(p)) {
        for (const auto& f : p.facets)
            if (dot(f.normal, x) + f.offset == 0) {
                out.push_back(x);
                break;
            }
    }
    return out;
}

bool contains(const LatticePolytope& p, const IntVector& x) {
    for (const auto& f : p.facets)
        if (dot(f.normal, x) + f.offset < 0) return false;
    return true;
}

LatticePolytope translate(const LatticePolytope& p, const IntVector& m) {
    if (m.size() != p.dim) fail(ErrorCode::DimensionMismatch, "translation vector has wrong length");
    LatticePolytope q = p;
    for (auto& v : q.vertices) v = sub(v, m);
    for (auto& f : q.facets) f.offset += dot(f.normal, m);
    return q;
}

bool is_reflexive(const LatticePolytope& p) {
    for (const auto& f : p.facets)
        if (f.offset <= 0) fail(ErrorCode::NoInteriorOrigin, "origin is not an interior point");
    for (const auto& f : p.facets)
        if (f.offset != 1) return false;
    return true;
}

namespace {

struct Puller {
    const std::vector<IntVector>& pts;
    std::vector<std::size_t> rank;

    std::vector<std::vector<std::size_t>> pull(std::vector<std::size_t> s) {
        std::vector<RatVector> rp;
        for (auto i : s) rp.push_back(rat(pts[i]));
        std::size_t d = 0;
        auto coords = affine_coordinates(rp, d);
        if (s.size() == d + 1) {
            std::sort(s.begin(), s.end());
            return {s};
        }
        std::size_t apex = 0;
        for (std::size_t k = 1; k < s.size(); ++k)
            if (rank[s[k]] < rank[s[apex]]) apex = k;
        std::vector<std::vector<std::size_t>> out;
        for (const auto& f : hull_facets(coords, d)) {
            if (std::binary_search(f.points.begin(), f.points.end(), apex)) continue;
            std::vector<std::size_t> face;
            for (auto k : f.points) face.push_back(s[k]);
            for (auto simplex : pull(face)) {
                simplex.push_back(s[apex]);
                std::sort(simplex.begin(), simplex.end());
                out.push_back(std::move(simplex));
            }
        }
        return out;
    }
};

}  // namespace

Triangulation pulling_triangulation(const LatticePolytope& p, const std::optional<std::vector<std::size_t>>& order) {
    const std::size_t m = p.vertices.size();
    std::vector<std::size_t> ord(m);
    if (order) {
        if (order->size() != m) fail(ErrorCode::InvalidArgument, "pulling order must list every vertex once");
        ord = *order;
        auto chk = ord;
        std::sort(chk.begin(), chk.end());
        for (std::size_t i = 0; i < m; ++i)
            if (chk[i] != i) fail(ErrorCode::InvalidArgument, "pulling order must list every vertex once");
    } else {
        for (std::size_t i = 0; i < m; ++i) ord[i] = i;
    }
    Puller puller{p.vertices, std::vector<std::size_t>(m)};
    for (std::size_t k = 0; k < m; ++k) puller.rank[ord[k]] = k;
    std::vector<std::size_t> all(m);
    for (std::size_t i = 0; i < m; ++i) all[i] = i;
    Triangulation t;
    t.simplices = puller.pull(all);
    std::sort(t.simplices.begin(), t.simplices.end());
    Int base = 2;
    for (int attempt = 0; attempt < 64; ++attempt, base *= 2) {
        t.heights.assign(m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            Int h;
            mpz_pow_ui(h.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(m - 1 - puller.rank[i]));
            t.heights[i] = -h;
        }
        if (verify_regular_triangulation(p, t)) return t;
    }
    fail(ErrorCode::Internal, "no height function found for pulling triangulation");
}

bool verify_regular_triangulation(const LatticePolytope& p, const Triangulation& t) {
    const std::size_t d = p.dim, m = p.vertices.size();
    if (t.heights.size() != m) return false;
    std::map<std::vector<std::size_t>, int> ridge_count;
    for (const auto& s : t.simplices) {
        if (s.size() != d + 1) return false;
        std::vector<RatVector> rows;
        RatVector rhs;
        for (auto i : s) {
            if (i >= m) return false;
            RatVector r = rat(p.vertices[i]);
            r.push_back(1);
            rows.push_back(r);
            rhs.emplace_back(t.heights[i]);
        }
        if (rank_rational(rows) != d + 1) return false;
        auto c = solve_rational(rows, rhs);
        if (!c) return false;
        for (std::size_t i = 0; i < m; ++i) {
            if (std::binary_search(s.begin(), s.end(), i)) continue;
            RatVector r = rat(p.vertices[i]);
            r.push_back(1);
            if (!(Rational(t.heights[i]) > dot(r, *c))) return false;
        }
        for (std::size_t k = 0; k <= d; ++k) {
            std::vector<std::size_t> ridge;
            for (std::size_t j = 0; j <= d; ++j)
                if (j != k) ridge.push_back(s[j]);
            ++ridge_count[ridge];
        }
    }
    for (const auto& [ridge, count] : ridge_count) {
        if (count == 2) continue;
        if (count != 1) return false;
        bool on_boundary = false;
        for (const auto& f : p.facets)
            if (std::includes(f.vertices.begin(), f.vertices.end(), ridge.begin(), ridge.end())) on_boundary = true;
        if (!on_boundary) return false;
    }
    return !t.simplices.empty();
}

std::vector<std::vector<std::size_t>> boundary_simplices(const LatticePolytope& p, const Triangulation& t) {
    std::set<std::vector<std::size_t>> out;
    for (const auto& s : t.simplices)
        for (std::size_t k = 0; k < s.size(); ++k) {
            std::vector<std::size_t> ridge;
            for (std::size_t j = 0; j < s.size(); ++j)
                if (j != k) ridge.push_back(s[j]);
            for (const auto& f : p.facets)
                if (std::includes(f.vertices.begin(), f.vertices.end(), ridge.begin(), ridge.end())) {
                    out.insert(ridge);
                    break;
                }
        }
    return {out.begin(), out.end()};
}

Int normalized_volume(const LatticePolytope& p) {
    Int total = 0;
    for (const auto& s : pulling_triangulation(p).simplices) {
        IntMatrix m(p.dim, p.dim);
        for (std::size_t r = 1; r < s.size(); ++r)
            for (std::size_t c = 0; c < p.dim; ++c) m(r - 1, c) = p.vertices[s[r]][c] - p.vertices[s[0]][c];
        total += abs(determinant(m));
    }
    return total;
}

}  // namespace nccr
