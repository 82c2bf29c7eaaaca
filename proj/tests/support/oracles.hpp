#pragma once

// Independent reference computations for the tests. Nothing here calls into the library.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using Z = mpz_class;
using Vec = std::vector<long>;
using Mat = std::vector<std::vector<Z>>;

Mat to_mat(const std::vector<Vec>& rows);

// Bareiss elimination, square input.
Z det(Mat a);

// gcd of all k x k minors (0 if all vanish).
Z minor_gcd(const Mat& a, std::size_t k);

// Every cone is n linearly independent rays and a generic probe point lies in exactly one open cone.
bool fan_is_valid(std::size_t dim, const std::vector<Vec>& rays, const std::vector<std::vector<std::size_t>>& cones,
                  std::mt19937_64& rng, std::string* why = nullptr);

// Vertices in counterclockwise order around their centroid.
std::vector<Vec> ccw(std::vector<Vec> vs);

// Canonical form of a lattice polygon under GL2(Z) and translations.
std::vector<Vec> polygon_normal_form(const std::vector<Vec>& vertices);

// Vertices ccw, every edge at lattice distance one from the origin.
bool polygon_is_reflexive(const std::vector<Vec>& vertices);

// Lattice points in the closed polygon, counted by brute force.
std::size_t polygon_points(const std::vector<Vec>& vertices, bool interior_only);

Z binomial(long n, long k);
// h^i(P^n, O(d)).
std::vector<std::int64_t> projective_space_cohomology(long n, long d);
// h^i(P^1 x P^1, O(a, b)) by Kunneth.
std::vector<std::int64_t> p1xp1_cohomology(long a, long b);

}  // namespace oracle
