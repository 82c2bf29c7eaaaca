#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace nccr {

using Int = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rational>;

IntVector int_vector(std::initializer_list<long> values);
IntVector int_vector(const std::vector<long>& values);

Int floor_div(const Int& a, const Int& b);
Int ceil_div(const Int& a, const Int& b);
Int floor_of(const Rational& q);
Int ceil_of(const Rational& q);
Int mod_floor(const Int& a, const Int& m);

Int dot(const IntVector& a, const IntVector& b);
Rational dot(const RatVector& a, const RatVector& b);
Rational dot(const RatVector& a, const IntVector& b);

IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector scale(const IntVector& a, const Int& k);
bool is_zero(const IntVector& v);

Int gcd_of(const IntVector& v);
Int lcm_of_denominators(const RatVector& v);

RatVector to_rational(const IntVector& v);

// Scales a nonzero rational vector to the primitive integer vector on the same ray.
IntVector primitive_direction(const RatVector& v);

std::string to_string(const IntVector& v);
std::string to_string(const RatVector& v);

bool fits_long(const Int& x);
long to_long(const Int& x);

}  // namespace nccr
