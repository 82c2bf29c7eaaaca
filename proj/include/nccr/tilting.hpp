#pragma once

#include <nccr/cohomology.hpp>
#include <nccr/fan.hpp>

#include <optional>
#include <string>
#include <vector>

namespace nccr {

enum class Provenance { Beilinson, NovaLift, BorisovHuaWindow, ToricSurface, UserSupplied };
const char* to_string(Provenance p);

struct CollectionMember {
    IntVector weil;
    DivisorClass cls;
    std::optional<IntVector> character;  // set for equivariant lifts
    bool operator==(const CollectionMember& o) const {
        return weil == o.weil && cls == o.cls && character == o.character;
    }
};

// Line bundles on X_Sigma; for lifts the fan lives in N' coordinates and `embedding` records N'.
struct LineBundleCollection {
    Fan fan;
    Provenance provenance = Provenance::UserSupplied;
    std::string generation_assumed_by;
    std::string base_provenance;  // for lifts: provenance of the collection that was lifted
    std::optional<LatticeEmbedding> embedding;
    std::vector<CollectionMember> members;
};

LineBundleCollection beilinson_collection(std::size_t n);

// Groups of rays realising the fan as a product of projective spaces, if it is one.
std::optional<std::vector<std::vector<std::size_t>>> projective_space_factors(const Fan& f);
LineBundleCollection product_beilinson_collection(const Fan& f);

LineBundleCollection nova_lift(const LineBundleCollection& base, const LatticeEmbedding& e);

LineBundleCollection borisov_hua_window(const Fan& f);

struct SurfaceSearchOptions {
    long l_max = 20;
};
// Strong exceptional collection of maximal length on a smooth complete toric surface, searched among
// sums of boundary divisors; nullopt when the search finds none.
std::optional<LineBundleCollection> toric_surface_collection(const Fan& f, SurfaceSearchOptions opts = {});

struct ExtWitness {
    std::size_t from = 0, to = 0;
    std::size_t degree = 0;
    std::int64_t dimension = 0;
};

struct TiltingReport {
    bool partial_tilting = false;
    std::vector<std::vector<std::int64_t>> hom_dims;  // hom_dims[a][b] = dim Hom(L_a, L_b)
    std::optional<ExtWitness> witness;
};

TiltingReport partial_tilting_check(const LineBundleCollection& c);

// Classes L_b - L_a over all ordered pairs, on the fan of the collection.
std::vector<DivisorClass> difference_classes(const LineBundleCollection& c);

}  // namespace nccr
