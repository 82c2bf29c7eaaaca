#pragma once

#include <nccr/integer.hpp>

#include <optional>
#include <vector>

namespace nccr {

// Supporting inequality <normal, x> + offset >= 0 with primitive inner normal.
struct Facet {
    IntVector normal;
    Int offset;
    std::vector<std::size_t> vertices;  // indices into LatticePolytope::vertices
    bool operator==(const Facet& o) const {
        return normal == o.normal && offset == o.offset && vertices == o.vertices;
    }
};

// Full-dimensional lattice polytope, vertices in lexicographic order.
struct LatticePolytope {
    std::size_t dim = 0;
    std::vector<IntVector> vertices;
    std::vector<Facet> facets;
    bool operator==(const LatticePolytope& o) const {
        return dim == o.dim && vertices == o.vertices && facets == o.facets;
    }
};

struct HullResult {
    LatticePolytope polytope;
    std::vector<IntVector> dropped;  // input points that are not vertices
};

HullResult convex_hull(const std::vector<IntVector>& points, std::size_t dim);
LatticePolytope polytope_from_vertices(const std::vector<IntVector>& points, std::size_t dim);

std::vector<IntVector> lattice_points(const LatticePolytope& p);
std::vector<IntVector> interior_lattice_points(const LatticePolytope& p);
std::vector<IntVector> boundary_lattice_points(const LatticePolytope& p);
bool contains(const LatticePolytope& p, const IntVector& x);

// P - m
LatticePolytope translate(const LatticePolytope& p, const IntVector& m);

// Throws NoInteriorOrigin when the origin is not an interior point.
bool is_reflexive(const LatticePolytope& p);

Int normalized_volume(const LatticePolytope& p);

// Simplices index into the vertex list; heights witness regularity.
struct Triangulation {
    std::vector<std::vector<std::size_t>> simplices;
    std::vector<Int> heights;
};

// Pulls vertices in the given order (default: lexicographic).
Triangulation pulling_triangulation(const LatticePolytope& p,
                                    const std::optional<std::vector<std::size_t>>& order = std::nullopt);

// Lower-hull check: each simplex is a lower facet of the lifted point set and the simplices tile p.
bool verify_regular_triangulation(const LatticePolytope& p, const Triangulation& t);

// Codimension-one simplices of t lying in the boundary of p.
std::vector<std::vector<std::size_t>> boundary_simplices(const LatticePolytope& p, const Triangulation& t);

// Facets of the hull of rational points spanning R^d, as point index sets.
struct RationalFacet {
    IntVector normal;  // inner, primitive
    Rational rhs;      // <normal, x> >= rhs
    std::vector<std::size_t> points;
};
std::vector<RationalFacet> hull_facets(const std::vector<RatVector>& points, std::size_t d);

// Affine dimension of a point set.
std::size_t affine_dimension(const std::vector<IntVector>& points);

}  // namespace nccr
