#include <nccr/error.hpp>
#include <nccr/lattice.hpp>
#include <nccr/polyhedron.hpp>

#include <algorithm>
#include <map>

namespace nccr {

namespace {

Halfspace normalized(IntVector a, Int b) {
    Int g = gcd_of(a);
    g = gcd(g, b);
    if (g > 1) {
        for (auto& x : a) x /= g;
        b /= g;
    }
    return {std::move(a), std::move(b)};
}

}  // namespace

void LinearSystem::push(Halfspace h, std::uint64_t history) {
    if (is_zero(h.a)) {
        if (h.b < 0) infeasible_ = true;
        return;
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].a != h.a) continue;
        if (h.b < rows_[i].b) {
            rows_[i].b = h.b;
            history_[i] = history;
        }
        return;
    }
    rows_.push_back(std::move(h));
    history_.push_back(history);
}

void LinearSystem::add(IntVector a, Int b) {
    if (a.size() != dim_) fail(ErrorCode::DimensionMismatch, "inequality has wrong length");
    std::uint64_t hist = 0;
    if (rows_.size() + (infeasible_ ? 0 : 0) < 64) hist = std::uint64_t{1} << rows_.size();
    else track_history_ = false;
    push(normalized(std::move(a), std::move(b)), hist);
}

void LinearSystem::add(const RatVector& a, const Rational& b) {
    RatVector all = a;
    all.push_back(b);
    Int l = lcm_of_denominators(all);
    IntVector ia(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) ia[i] = Rational(a[i] * l).get_num();
    add(std::move(ia), Rational(b * l).get_num());
}

void LinearSystem::add_equality(const IntVector& a, const Int& b) {
    add(a, b);
    add(scale(a, -1), -b);
}

LinearSystem LinearSystem::eliminate(std::size_t var) const {
    LinearSystem out(dim_ - 1);
    out.infeasible_ = infeasible_;
    out.eliminated_ = eliminated_ + 1;
    out.track_history_ = track_history_;
    if (infeasible_) return out;
    auto drop = [&](const IntVector& a) {
        IntVector r;
        r.reserve(a.size() - 1);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (i != var) r.push_back(a[i]);
        return r;
    };
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Int& c = rows_[i].a[var];
        if (c > 0) pos.push_back(i);
        else if (c < 0) neg.push_back(i);
        else out.push(Halfspace{drop(rows_[i].a), rows_[i].b}, history_[i]);
    }
    for (auto p : pos)
        for (auto q : neg) {
            std::uint64_t hist = history_[p] | history_[q];
            if (track_history_ && static_cast<std::size_t>(__builtin_popcountll(hist)) > out.eliminated_ + 1) continue;
            const Int cp = rows_[p].a[var];
            const Int cq = -rows_[q].a[var];
            IntVector a(dim_);
            for (std::size_t k = 0; k < dim_; ++k) a[k] = cq * rows_[p].a[k] + cp * rows_[q].a[k];
            Int b = cq * rows_[p].b + cp * rows_[q].b;
            out.push(normalized(drop(a), std::move(b)), hist);
            if (out.infeasible_) return out;
        }
    return out;
}

LinearSystem LinearSystem::project_onto(std::size_t keep) const {
    LinearSystem s = *this;
    for (std::size_t v = dim_; v-- > 0;) {
        if (v == keep) continue;
        s = s.eliminate(v);
        if (s.infeasible_) break;
    }
    return s;
}

LinearSystem LinearSystem::substitute(std::size_t var, const Int& value) const {
    LinearSystem out(dim_ - 1);
    out.infeasible_ = infeasible_;
    out.track_history_ = false;
    for (const auto& h : rows_) {
        IntVector a;
        a.reserve(dim_ - 1);
        for (std::size_t i = 0; i < dim_; ++i)
            if (i != var) a.push_back(h.a[i]);
        out.push(normalized(std::move(a), h.b - h.a[var] * value), 0);
    }
    return out;
}

bool LinearSystem::feasible() const {
    LinearSystem s = *this;
    while (s.dim_ > 0 && !s.infeasible_) s = s.eliminate(s.dim_ - 1);
    return !s.infeasible_;
}

Interval LinearSystem::range_of(std::size_t var) const {
    LinearSystem s = project_onto(var);
    Interval out;
    if (s.infeasible_) {
        out.lo = Rational(1);
        out.hi = Rational(0);
        return out;
    }
    for (const auto& h : s.rows_) {
        Rational bound(h.b, h.a[0]);
        bound.canonicalize();
        if (h.a[0] > 0) {
            if (!out.hi || bound < *out.hi) out.hi = bound;
        } else {
            if (!out.lo || bound > *out.lo) out.lo = bound;
        }
    }
    return out;
}

Interval LinearSystem::range_of(const RatVector& objective) const {
    LinearSystem s(dim_ + 1);
    s.track_history_ = track_history_;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        IntVector a = rows_[i].a;
        a.push_back(0);
        s.add(std::move(a), rows_[i].b);
    }
    s.infeasible_ = infeasible_;
    RatVector up = objective, down(objective.size());
    for (std::size_t i = 0; i < objective.size(); ++i) down[i] = -objective[i];
    up.push_back(-1);
    down.push_back(1);
    s.add(up, Rational(0));
    s.add(down, Rational(0));
    return s.range_of(dim_);
}

bool LinearSystem::contains(const RatVector& x) const {
    if (infeasible_) return false;
    for (const auto& h : rows_)
        if (dot(x, h.a) > h.b) return false;
    return true;
}

bool LinearSystem::contains(const IntVector& x) const {
    if (infeasible_) return false;
    for (const auto& h : rows_)
        if (dot(h.a, x) > h.b) return false;
    return true;
}

namespace {

void enumerate(const LinearSystem& s, IntVector& prefix, const std::function<void(const IntVector&)>& visit) {
    if (s.trivially_infeasible()) return;
    if (s.dim() == 0) {
        visit(prefix);
        return;
    }
    Interval r = s.range_of(std::size_t{0});
    if (r.empty()) return;
    if (!r.lo || !r.hi) fail(ErrorCode::Internal, "lattice point enumeration over an unbounded polyhedron");
    Int lo = ceil_of(*r.lo), hi = floor_of(*r.hi);
    for (Int x = lo; x <= hi; ++x) {
        prefix.push_back(x);
        enumerate(s.substitute(0, x), prefix, visit);
        prefix.pop_back();
    }
}

}  // namespace

void LinearSystem::for_each_lattice_point(const std::function<void(const IntVector&)>& visit) const {
    IntVector prefix;
    enumerate(*this, prefix, visit);
}

std::size_t LinearSystem::count_lattice_points() const {
    std::size_t n = 0;
    for_each_lattice_point([&](const IntVector&) { ++n; });
    return n;
}

std::vector<RatVector> LinearSystem::vertices() const {
    std::vector<RatVector> out;
    if (infeasible_) return out;
    const std::size_t m = rows_.size();
    if (dim_ == 0) return {RatVector{}};
    if (m < dim_) return out;
    std::vector<std::size_t> idx(dim_);
    for (std::size_t i = 0; i < dim_; ++i) idx[i] = i;
    while (true) {
        std::vector<RatVector> a;
        RatVector b;
        for (auto i : idx) {
            a.push_back(to_rational(rows_[i].a));
            b.emplace_back(rows_[i].b);
        }
        if (rank_rational(a) == dim_) {
            auto x = solve_rational(a, b);
            if (x && contains(*x) && std::find(out.begin(), out.end(), *x) == out.end()) out.push_back(*x);
        }
        std::size_t k = dim_;
        while (k > 0 && idx[k - 1] == m - dim_ + (k - 1)) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < dim_; ++j) idx[j] = idx[j - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace nccr
