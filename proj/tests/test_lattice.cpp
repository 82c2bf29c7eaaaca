#include <doctest.h>

#include <nccr/error.hpp>
#include <nccr/lattice.hpp>

#include "support/helpers.hpp"

#include <random>

using namespace nccr;
using testing::pts;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

oracle::Mat as_oracle(const IntMatrix& m) {
    oracle::Mat o(m.rows(), std::vector<oracle::Z>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) o[i][j] = m(i, j);
    return o;
}

}  // namespace

TEST_SUITE("lattice_core") {

TEST_CASE("smith form of a small matrix") {
    IntMatrix a = IntMatrix::from_rows(pts({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}), 3);
    auto s = smith_normal_form(a);
    CHECK(s.diag == int_vector({2, 6, 12}));
    IntMatrix d = s.left * a * s.right;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(d(i, j) == (i == j ? s.diag[i] : Int(0)));
}

TEST_CASE("smith form agrees with determinantal divisors on random matrices") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        IntMatrix a = random_matrix(rng, r, c, -6, 6);
        auto s = smith_normal_form(a);
        CHECK(abs(oracle::det(as_oracle(s.left))) == 1);
        CHECK(abs(oracle::det(as_oracle(s.right))) == 1);
        Int prod = 1;
        for (std::size_t k = 1; k <= std::min(r, c); ++k) {
            prod *= s.diag[k - 1];
            CHECK(abs(prod) == oracle::minor_gcd(as_oracle(a), k));
            if (k >= 2 && s.diag[k - 1] != 0) CHECK(s.diag[k - 1] % s.diag[k - 2] == 0);
        }
    }
}

TEST_CASE("cokernel presentations") {
    // Z^2 / <(2,0),(0,3)> = Z/6
    auto g = cokernel_presentation(IntMatrix::from_rows(pts({{2, 0}, {0, 3}}), 2));
    CHECK(g.free_rank == 0);
    CHECK(g.torsion == int_vector({6}));
    CHECK(g.torsion_order() == 6);
    CHECK(g.torsion_elements().size() == 6);
    auto h = cokernel_presentation(IntMatrix::from_rows(pts({{1}, {1}, {1}}), 1));
    CHECK(h.free_rank == 2);
    CHECK(h.torsion.empty());
}

TEST_CASE("sublattice index, coordinates and quotient") {
    IntMatrix b = IntMatrix::from_columns(pts({{1, 0}, {1, 2}}), 2);
    LatticeEmbedding e{2, b};
    CHECK(e.index() == 2);
    CHECK(e.coordinates(int_vector({2, 2})) == int_vector({1, 1}));
    CHECK_FALSE(e.coordinates(int_vector({0, 1})).has_value());
    auto q = lattice_quotient(e);
    CHECK(q.free_rank == 0);
    CHECK(q.torsion == int_vector({2}));
    LatticeEmbedding same{2, IntMatrix::from_columns(pts({{1, 2}, {2, 2}}), 2)};
    CHECK(e.same_lattice(same));
    CHECK_FALSE(e.same_lattice(LatticeEmbedding::identity(2)));
}

TEST_CASE("primitive vectors") {
    CHECK(primitive_vector(int_vector({4, -6, 2})) == int_vector({2, -3, 1}));
    CHECK(is_primitive(int_vector({3, 5})));
    CHECK_FALSE(is_primitive(int_vector({3, 0, 6})));
    CHECK_FALSE(is_primitive(int_vector({0, 0})));
}

TEST_CASE("determinant and rank agree with the oracle") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 1 + rng() % 5;
        IntMatrix a = random_matrix(rng, n, n, -5, 5);
        CHECK(determinant(a) == oracle::det(as_oracle(a)));
        CHECK((rank(a) == n) == (oracle::det(as_oracle(a)) != 0));
    }
}

TEST_CASE("hermite normal form spans the same lattice") {
    IntMatrix a = IntMatrix::from_rows(pts({{2, 4}, {4, 2}, {6, 6}}), 2);
    IntMatrix h = hermite_normal_form(a);
    CHECK(h.rows() == 2);
    CHECK(abs(determinant(h)) == 12);
}

TEST_CASE("rational solve and nullspace") {
    std::vector<RatVector> a = {{Rational(1), Rational(2)}, {Rational(3), Rational(4)}};
    auto x = solve_rational(a, {Rational(5), Rational(6)});
    REQUIRE(x);
    CHECK((*x)[0] == Rational(-4));
    CHECK((*x)[1] == Rational(9, 2));
    auto ns = nullspace({{Rational(1), Rational(1), Rational(1)}}, 3);
    CHECK(ns.size() == 2);
    CHECK(rank_rational({{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}) == 1);
}

}
