#pragma once

#include <nccr/integer.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace nccr {

// a . x <= b with integer data, normalized so that gcd(a, b) = 1.
struct Halfspace {
    IntVector a;
    Int b;
    bool operator==(const Halfspace& o) const { return a == o.a && b == o.b; }
};

struct Interval {
    std::optional<Rational> lo, hi;  // nullopt = unbounded on that side
    bool empty() const { return lo && hi && *lo > *hi; }
};

// Rational polyhedron {x in Q^dim : A x <= b}, manipulated by Fourier-Motzkin elimination.
class LinearSystem {
public:
    explicit LinearSystem(std::size_t dim = 0) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    const std::vector<Halfspace>& rows() const { return rows_; }
    bool trivially_infeasible() const { return infeasible_; }

    void add(IntVector a, Int b);
    void add(const RatVector& a, const Rational& b);
    void add_equality(const IntVector& a, const Int& b);

    LinearSystem eliminate(std::size_t var) const;
    // Eliminates every variable except `keep`, in descending order.
    LinearSystem project_onto(std::size_t keep) const;
    LinearSystem substitute(std::size_t var, const Int& value) const;
    bool feasible() const;
    Interval range_of(std::size_t var) const;
    Interval range_of(const RatVector& objective) const;

    bool contains(const RatVector& x) const;
    bool contains(const IntVector& x) const;

    // Integer points in lexicographic order; throws Internal on an unbounded coordinate.
    void for_each_lattice_point(const std::function<void(const IntVector&)>& visit) const;
    std::size_t count_lattice_points() const;

    // Vertices of a bounded nonempty polyhedron.
    std::vector<RatVector> vertices() const;

private:
    void push(Halfspace h, std::uint64_t history);
    std::size_t dim_;
    std::vector<Halfspace> rows_;
    std::vector<std::uint64_t> history_;
    std::size_t eliminated_ = 0;
    bool track_history_ = true;
    bool infeasible_ = false;
};

}  // namespace nccr
