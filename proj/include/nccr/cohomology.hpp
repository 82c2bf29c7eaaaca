#pragma once

#include <nccr/fan.hpp>
#include <nccr/polyhedron.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace nccr {

using RaySet = std::uint64_t;

// Reduced Betti numbers over Q of the full subcomplex of a simplicial fan on the rays in `subset`.
// Entry j holds the rank of reduced H^{j-1}, so index 0 is the augmentation degree.
std::vector<std::size_t> reduced_betti(const Fan& f, RaySet subset);

// h^0 .. h^n of a torus-invariant Weil divisor.
struct CohomologyTable {
    std::vector<std::int64_t> dims;
    bool operator==(const CohomologyTable& o) const { return dims == o.dims; }
    bool higher_vanish() const;
    bool all_vanish() const;
};

struct CohomologyOptions {
    std::size_t max_rays = 16;
};

// Chamber enumeration: one bounded polyhedron per non-acyclic ray subset.
class CohomologyEngine {
public:
    explicit CohomologyEngine(const Fan& f, CohomologyOptions opts = {});

    const Fan& fan() const { return fan_; }
    CohomologyTable compute(const IntVector& weil) const;
    // Calls visit(m, i, multiplicity) for every weight contributing to H^i.
    void for_each_weight(const IntVector& weil,
                         const std::function<void(const IntVector&, std::size_t, std::size_t)>& visit) const;

    struct Subset {
        RaySet rays;
        std::vector<std::size_t> betti;  // reduced, shifted as in reduced_betti
    };
    const std::vector<Subset>& nonacyclic() const { return nonacyclic_; }

    LinearSystem weight_region(RaySet s, const IntVector& weil) const;

private:
    Fan fan_;
    std::vector<Subset> nonacyclic_;
};

CohomologyTable line_bundle_cohomology(const Fan& f, const IntVector& weil);

// Weight-space sweep over a box containing every arrangement vertex; throws BoxTooSmall if a
// non-acyclic weight touches the box boundary.
CohomologyTable brute_force_cohomology(const Fan& f, const IntVector& weil);

// M'/M for N' inside N, realised as residues of N'-dual coordinates.
class CharacterGroup {
public:
    explicit CharacterGroup(const LatticeEmbedding& e);
    const AbelianGroup& group() const { return group_; }
    IntVector character_of(const IntVector& weight) const;
    std::vector<IntVector> elements() const { return group_.torsion_elements(); }
    IntVector add(const IntVector& a, const IntVector& b) const;
    IntVector sub(const IntVector& a, const IntVector& b) const;
    void validate(const IntVector& chi) const;

private:
    AbelianGroup group_;
    std::vector<IntVector> rows_;
};

// Per-character cohomology of a divisor on X_{Sigma,N'}; the fan is in N' coordinates.
std::map<IntVector, CohomologyTable> cohomology_by_character(const CohomologyEngine& engine,
                                                             const CharacterGroup& chars,
                                                             const IntVector& weil);

CohomologyTable equivariant_invariants(const Fan& sublattice_fan, const LatticeEmbedding& e,
                                       const IntVector& weil, const IntVector& character);

// Class-space relaxation of the weights where a given non-acyclic subset contributes.
struct ForbiddenRegion {
    std::vector<std::size_t> subset;
    std::vector<std::size_t> degrees;  // cohomological degrees i > 0 that this subset feeds
    LinearSystem region;               // in free class coordinates
};

std::vector<ForbiddenRegion> forbidden_regions(const Fan& f, const ClassGroup& cl, const CohomologyEngine& engine);
std::vector<ForbiddenRegion> forbidden_regions(const Fan& f);

bool in_region(const ForbiddenRegion& r, const DivisorClass& c);

struct RayEntry {
    std::size_t region;
    Int first;                  // smallest integer l >= 1 inside the region
    std::optional<Int> last;    // largest, or nullopt if unbounded
};

// Integer l >= 1 with x + l t inside the region.
std::optional<RayEntry> ray_entry(const ForbiddenRegion& r, std::size_t index, const DivisorClass& x,
                                  const DivisorClass& t);

struct VanishingWitness {
    std::size_t class_index = 0;
    long l = 0;
    std::size_t degree = 0;
    std::int64_t dimension = 0;
};

struct ClassEvidence {
    DivisorClass cls;
    std::vector<RayEntry> entries;
    bool escape_proved = true;
};

struct VanishingCertificate {
    enum class Kind { CertifiedAllL, CheckedUpTo, Failed };
    Kind kind = Kind::CertifiedAllL;
    long l_max = 0;
    bool escape_proved = false;  // every entering interval ends by l_max
    std::optional<VanishingWitness> witness;
    std::vector<ClassEvidence> evidence;
};

const char* to_string(VanishingCertificate::Kind k);

VanishingCertificate all_l_vanishing_certificate(const CohomologyEngine& engine, const ClassGroup& cl,
                                                 const std::vector<ForbiddenRegion>& regions,
                                                 const std::vector<DivisorClass>& classes, const DivisorClass& twist,
                                                 long l_max);
VanishingCertificate all_l_vanishing_certificate(const Fan& f, const std::vector<DivisorClass>& classes,
                                                 const DivisorClass& twist, long l_max);

}  // namespace nccr
