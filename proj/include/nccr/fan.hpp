#pragma once

#include <nccr/integer.hpp>
#include <nccr/lattice.hpp>
#include <nccr/polytope.hpp>

#include <optional>
#include <vector>

namespace nccr {

// Polyhedral cone given by generators.
struct Cone {
    std::size_t dim = 0;
    std::vector<IntVector> generators;
};

struct ConeFacet {
    IntVector normal;                 // inner, primitive
    std::vector<std::size_t> members;  // generators on the facet
};

std::vector<ConeFacet> cone_facets(const Cone& c);
bool cone_contains(const Cone& c, const IntVector& x);

// Complete or partial fan. Rays are primitive and sorted lexicographically; each max cone is a sorted index set.
struct Fan {
    std::size_t dim = 0;
    std::vector<IntVector> rays;
    std::vector<std::vector<std::size_t>> max_cones;

    static Fan make(std::size_t dim, std::vector<IntVector> rays, std::vector<std::vector<std::size_t>> cones);
    Cone cone(std::size_t i) const;
    std::size_t ray_index(const IntVector& r) const;  // SIZE_MAX if absent
    bool operator==(const Fan& o) const { return dim == o.dim && rays == o.rays && max_cones == o.max_cones; }
};

Cone cone_over_polytope(const LatticePolytope& p);
Fan face_fan(const LatticePolytope& p);
// Face fan whose cones are the given simplices of the boundary (vertex indices).
Fan face_fan_from_simplices(const LatticePolytope& p, const std::vector<std::vector<std::size_t>>& simplices);

struct GorensteinElement {
    RatVector m;
    bool integral = false;
};
GorensteinElement gorenstein_element(const Cone& c);

struct DivisorClass {
    IntVector free;
    IntVector torsion;
    bool operator==(const DivisorClass& o) const { return free == o.free && torsion == o.torsion; }
    bool operator<(const DivisorClass& o) const {
        return free != o.free ? free < o.free : torsion < o.torsion;
    }
};

// Cl = Z^{rays} / M together with the projection and a section.
class ClassGroup {
public:
    explicit ClassGroup(const Fan& f);
    const AbelianGroup& group() const { return group_; }
    std::size_t num_rays() const { return k_; }

    DivisorClass class_of(const IntVector& weil) const;
    IntVector lift(const DivisorClass& c) const;
    DivisorClass add(const DivisorClass& a, const DivisorClass& b) const;
    DivisorClass sub(const DivisorClass& a, const DivisorClass& b) const;
    DivisorClass scale(const DivisorClass& a, const Int& k) const;
    DivisorClass reduce(DivisorClass c) const;
    DivisorClass zero() const;
    // Rows of the free projection: a basis of the integer relations among the rays.
    const std::vector<IntVector>& free_rows() const { return free_rows_; }
    DivisorClass anticanonical() const;

private:
    AbelianGroup group_;
    std::size_t k_ = 0;
    std::vector<IntVector> free_rows_;
    std::vector<IntVector> torsion_rows_;
    IntMatrix inverse_;  // k x k, columns ordered unit rows, torsion rows, free rows
    std::size_t unit_count_ = 0;
};

struct FanPredicates {
    bool simplicial = false;
    bool complete = false;
    bool smooth = false;
};

bool is_simplicial(const Fan& f);
bool is_complete(const Fan& f);
bool is_smooth(const Fan& f, const LatticeEmbedding& e);
FanPredicates fan_predicates(const Fan& f, const std::optional<LatticeEmbedding>& e = std::nullopt);

Fan star_subdivision(const Fan& f, const IntVector& point);
Fan canonical_bundle_fan(const Fan& f);

// Smallest-index sublattice N' for which f is smooth, searched up to the given index.
std::optional<LatticeEmbedding> smoothing_sublattice(const Fan& f, const Int& index_cap = 64);

// f expressed in N' coordinates; beta[r] * u_r is the primitive N'-generator of ray r.
struct SublatticeFan {
    LatticeEmbedding embedding;
    Fan fan;  // rays in N' coordinates, in the same order as the source rays
    std::vector<Int> beta;
    std::vector<std::size_t> source_index;  // source ray of each ray of `fan`
};
SublatticeFan fan_in_sublattice(const Fan& f, const LatticeEmbedding& e);
// Fan of the total space of O(-sum beta_r D_r) over X_{Sigma,N'}.
Fan canonical_bundle_fan_in_sublattice(const SublatticeFan& s);

Cone dual_cone(const Cone& c);

struct WeakFanoReport {
    bool nef = false;
    bool big = false;
};
WeakFanoReport weak_fano_check(const Fan& f);

}  // namespace nccr
