#include <doctest.h>

#include <nccr/cohomology.hpp>
#include <nccr/error.hpp>

#include "support/helpers.hpp"

#include <random>

using namespace nccr;
using testing::pts;

namespace {

std::int64_t total(const CohomologyTable& t) {
    std::int64_t s = 0;
    for (auto x : t.dims) s += x;
    return s;
}

}  // namespace

TEST_SUITE("cohomology") {

TEST_CASE("reduced betti numbers of the projective plane fan") {
    Fan f = testing::projective_plane();
    CHECK(reduced_betti(f, 0) == std::vector<std::size_t>{1, 0, 0});
    CHECK(reduced_betti(f, 0b111) == std::vector<std::size_t>{0, 0, 1});
    CHECK(reduced_betti(f, 0b011) == std::vector<std::size_t>{0, 0, 0});
    Fan q = testing::p1xp1();
    // two opposite rays: two points, reduced H^0 of rank 1
    RaySet opp = (RaySet{1} << q.ray_index(int_vector({1, 0}))) | (RaySet{1} << q.ray_index(int_vector({-1, 0})));
    CHECK(reduced_betti(q, opp) == std::vector<std::size_t>{0, 1, 0});
}

TEST_CASE("projective spaces match the closed form") {
    for (std::size_t n = 1; n <= 3; ++n) {
        Fan f = testing::projective_space(n);
        CohomologyEngine engine(f);
        for (long d = -7; d <= 6; ++d) {
            auto t = engine.compute(testing::on_ray(f, 0, d));
            CHECK(t.dims == oracle::projective_space_cohomology(static_cast<long>(n), d));
        }
    }
}

TEST_CASE("product of two lines matches Kunneth") {
    Fan f = testing::p1xp1();
    std::size_t x = f.ray_index(int_vector({1, 0})), y = f.ray_index(int_vector({0, 1}));
    CohomologyEngine engine(f);
    for (long a = -5; a <= 4; ++a)
        for (long b = -5; b <= 4; ++b) {
            IntVector w(4);
            w[x] = a;
            w[y] = b;
            CHECK(engine.compute(w).dims == oracle::p1xp1_cohomology(a, b));
        }
}

TEST_CASE("chamber and brute force agree on small random divisors") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> d(-4, 4);
    for (const Fan& f : {testing::hirzebruch(2), testing::polygon_fan({{1, 0}, {0, -1}, {-1, 3}}),
                         Fan::make(2, pts({{2, -1}, {-1, 2}, {-1, -1}}), {{0, 1}, {1, 2}, {0, 2}}),
                         testing::product_p1_cubed()}) {
        CohomologyEngine engine(f);
        for (int t = 0; t < 15; ++t) {
            IntVector w(f.rays.size());
            for (auto& x : w) x = d(rng);
            CHECK(engine.compute(w) == brute_force_cohomology(f, w));
        }
    }
}

TEST_CASE("euler characteristic is linear-invariant") {
    Fan f = testing::hirzebruch(1);
    CohomologyEngine engine(f);
    ClassGroup cl(f);
    IntVector w = int_vector({2, -1, 3, 0});
    // adding a principal divisor leaves the table unchanged
    IntVector m = int_vector({1, 2});
    IntVector div;
    for (const auto& r : f.rays) div.push_back(dot(m, r));
    CHECK(engine.compute(w) == engine.compute(add(w, div)));
}

TEST_CASE("weights enumerate the same table") {
    Fan f = testing::projective_plane();
    CohomologyEngine engine(f);
    IntVector w = testing::on_ray(f, 0, -5);
    std::vector<std::int64_t> dims(3, 0);
    engine.for_each_weight(w, [&](const IntVector&, std::size_t i, std::size_t mult) { dims[i] += mult; });
    CHECK(dims == engine.compute(w).dims);
}

TEST_CASE("character decomposition sums to the total") {
    Fan wp = testing::polygon_fan({{1, 0}, {0, -1}, {-1, 3}});
    auto e = *smoothing_sublattice(wp);
    auto s = fan_in_sublattice(wp, e);
    CharacterGroup chars(e);
    CHECK(chars.group().torsion_order() == 3);
    CHECK(chars.elements().size() == 3);
    // weights of M inside M' carry the trivial character
    for (const auto& m : pts({{1, 0}, {0, 1}, {2, -5}})) {
        IntVector mp = e.basis.transpose() * m;
        CHECK(is_zero(chars.character_of(mp)));
    }
    CohomologyEngine engine(s.fan);
    for (long d = -6; d <= 4; ++d) {
        IntVector w = testing::on_ray(s.fan, 0, d);
        auto parts = cohomology_by_character(engine, chars, w);
        std::int64_t sum = 0;
        for (const auto& [chi, t] : parts) sum += total(t);
        CHECK(sum == total(engine.compute(w)));
        for (const auto& chi : chars.elements()) {
            auto inv = equivariant_invariants(s.fan, e, w, chi);
            auto it = parts.find(chi);
            CHECK(total(inv) == (it == parts.end() ? 0 : total(it->second)));
        }
    }
    CHECK_THROWS_AS(chars.validate(int_vector({5})), Error);
}

TEST_CASE("forbidden regions") {
    auto p2 = forbidden_regions(testing::projective_plane());
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].degrees == std::vector<std::size_t>{2});
    CHECK(in_region(p2[0], DivisorClass{int_vector({-3}), {}}));
    CHECK_FALSE(in_region(p2[0], DivisorClass{int_vector({-2}), {}}));
    auto q = forbidden_regions(testing::p1xp1());
    CHECK(q.size() == 3);
    // every class with nonzero higher cohomology lies in some region
    Fan f = testing::hirzebruch(1);
    ClassGroup cl(f);
    CohomologyEngine engine(f);
    auto regions = forbidden_regions(f, cl, engine);
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> d(-6, 6);
    for (int t = 0; t < 100; ++t) {
        IntVector w(f.rays.size());
        for (auto& x : w) x = d(rng);
        if (engine.compute(w).higher_vanish()) continue;
        bool covered = false;
        for (const auto& r : regions) covered = covered || in_region(r, cl.class_of(w));
        CHECK(covered);
    }
}

TEST_CASE("ray entry into a region") {
    auto r = forbidden_regions(testing::projective_plane());
    auto e = ray_entry(r[0], 0, DivisorClass{int_vector({2}), {}}, DivisorClass{int_vector({-3}), {}});
    REQUIRE(e);
    CHECK(e->first == 2);
    CHECK_FALSE(e->last.has_value());
    CHECK_FALSE(ray_entry(r[0], 0, DivisorClass{int_vector({-2}), {}}, DivisorClass{int_vector({3}), {}}).has_value());
}

TEST_CASE("vanishing certificates") {
    Fan f = testing::projective_plane();
    ClassGroup cl(f);
    std::vector<DivisorClass> diffs;
    for (long d = -2; d <= 2; ++d) diffs.push_back(DivisorClass{int_vector({d}), {}});
    auto ok = all_l_vanishing_certificate(f, diffs, cl.anticanonical(), 20);
    CHECK(ok.kind == VanishingCertificate::Kind::CertifiedAllL);
    CHECK(std::string(to_string(ok.kind)) == "CERTIFIED_ALL_L");
    auto bad = all_l_vanishing_certificate(f, {DivisorClass{int_vector({-6}), {}}}, DivisorClass{int_vector({-1}), {}}, 20);
    CHECK(bad.kind == VanishingCertificate::Kind::Failed);
    REQUIRE(bad.witness);
    CHECK(bad.witness->degree == 2);
    // witness confirmed by brute force
    IntVector w = cl.lift(DivisorClass{int_vector({-6 - bad.witness->l}), {}});
    CHECK(brute_force_cohomology(f, w).dims[2] == bad.witness->dimension);
    try {
        all_l_vanishing_certificate(f, diffs, cl.zero(), 20);
        FAIL("expected ZeroTwist");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroTwist);
    }
}

TEST_CASE("twists on the product of two lines") {
    Fan f = testing::p1xp1();
    ClassGroup cl(f);
    IntVector wx(4), wy(4);
    wx[f.ray_index(int_vector({1, 0}))] = 1;
    wy[f.ray_index(int_vector({0, 1}))] = 1;
    DivisorClass ex = cl.class_of(wx), ey = cl.class_of(wy);
    // (5 - l, -1) is acyclic in every degree > 0
    auto c = all_l_vanishing_certificate(f, {cl.add(cl.scale(ex, Int(5)), cl.scale(ey, Int(-1)))}, cl.scale(ex, Int(-1)), 20);
    CHECK(c.kind != VanishingCertificate::Kind::Failed);
    // (-3, -4 + l) has H^2 at l = 1
    auto d = all_l_vanishing_certificate(f, {cl.add(cl.scale(ex, Int(-3)), cl.scale(ey, Int(-4)))}, ey, 20);
    REQUIRE(d.kind == VanishingCertificate::Kind::Failed);
    CHECK(d.witness->l == 1);
    CHECK(d.witness->degree == 2);
}

TEST_CASE("too many rays") {
    CohomologyOptions opts;
    opts.max_rays = 3;
    try {
        CohomologyEngine engine(testing::p1xp1(), opts);
        FAIL("expected TooManyRays");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooManyRays);
    }
}

}
