#pragma once

#include <nccr/fan.hpp>
#include <nccr/integer.hpp>

#include "oracles.hpp"

#include <vector>

namespace testing {

inline std::vector<nccr::IntVector> pts(const std::vector<std::vector<long>>& raw) {
    std::vector<nccr::IntVector> out;
    for (const auto& r : raw) out.push_back(nccr::int_vector(r));
    return out;
}

inline std::vector<long> longs(const nccr::IntVector& v) {
    std::vector<long> out;
    for (const auto& x : v) out.push_back(x.get_si());
    return out;
}

inline std::vector<std::vector<long>> longs(const std::vector<nccr::IntVector>& vs) {
    std::vector<std::vector<long>> out;
    for (const auto& v : vs) out.push_back(longs(v));
    return out;
}

inline nccr::Fan projective_plane() {
    return nccr::Fan::make(2, pts({{1, 0}, {0, 1}, {-1, -1}}), {{0, 1}, {1, 2}, {0, 2}});
}

inline nccr::Fan p1xp1() {
    return nccr::Fan::make(2, pts({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}), {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

inline nccr::Fan hirzebruch(long a) {
    return nccr::Fan::make(2, pts({{1, 0}, {0, 1}, {-1, a}, {0, -1}}), {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

// Face fan of a polygon with the origin inside, rays in angular order.
inline nccr::Fan polygon_fan(const std::vector<std::vector<long>>& vertices) {
    auto vs = oracle::ccw(vertices);
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t i = 0; i < vs.size(); ++i) cones.push_back({i, (i + 1) % vs.size()});
    std::vector<nccr::IntVector> rays;
    for (const auto& v : vs) rays.push_back(nccr::primitive_vector(nccr::int_vector(v)));
    return nccr::Fan::make(2, rays, cones);
}

inline nccr::Fan product_p1_cubed() {
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t a : {0, 3})
        for (std::size_t b : {1, 4})
            for (std::size_t c : {2, 5}) cones.push_back({a, b, c});
    return nccr::Fan::make(3, pts({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}), cones);
}

inline nccr::Fan projective_space(std::size_t n) {
    std::vector<nccr::IntVector> rays;
    for (std::size_t i = 0; i < n; ++i) {
        nccr::IntVector e(n);
        e[i] = 1;
        rays.push_back(e);
    }
    rays.push_back(nccr::IntVector(n, nccr::Int(-1)));
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t omit = 0; omit <= n; ++omit) {
        std::vector<std::size_t> c;
        for (std::size_t i = 0; i <= n; ++i)
            if (i != omit) c.push_back(i);
        cones.push_back(c);
    }
    return nccr::Fan::make(n, rays, cones);
}

// Weil divisor sum c_i D_i with c placed on ray index r.
inline nccr::IntVector on_ray(const nccr::Fan& f, std::size_t r, long c) {
    nccr::IntVector w(f.rays.size());
    w[r] = c;
    return w;
}

}  // namespace testing
