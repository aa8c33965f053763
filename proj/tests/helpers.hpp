#pragma once

#include <optional>
#include <random>
#include <vector>

#include "qvm/repvar.hpp"

namespace testutil {

using namespace qvm;

inline GMat mat(std::initializer_list<std::initializer_list<long>> rows) {
    GMat m(static_cast<int>(rows.size()), rows.size() ? static_cast<int>(rows.begin()->size()) : 0);
    int i = 0;
    for (auto& r : rows) {
        int j = 0;
        for (long x : r) m(i, j++) = Gauss(x);
        ++i;
    }
    return m;
}

inline GMat random_mat(std::mt19937_64& rng, int r, int c, int box = 3) {
    std::uniform_int_distribution<int> u(-box, box);
    GMat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = Gauss(u(rng));
    return m;
}

inline Gauss random_nonzero(std::mt19937_64& rng, int box = 4) {
    std::uniform_int_distribution<int> u(-box, box);
    for (;;) {
        int x = u(rng);
        if (x) return Gauss(x);
    }
}

inline Gauge random_gauge(std::mt19937_64& rng, const QuiverMult& q, const IntVec& dims) {
    Gauge g;
    for (int i = 0; i < q.size(); ++i) {
        int v = static_cast<int>(dims[i]), d = q.mult[i];
        TruncMatPoly<Gauss> gi(v, d);
        do gi.c[0] = random_mat(rng, v, v, 2);
        while (v > 0 && !is_invertible(gi.c[0]));
        for (int k = 1; k < d; ++k) gi.c[k] = random_mat(rng, v, v, 2);
        g.push_back(gi);
    }
    return g;
}

inline GRep random_point(std::mt19937_64& rng, const QuiverMult& q, const IntVec& dims) {
    GRep B = zero_point<Gauss>(q, dims);
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        B.fwd[a] = random_mat(rng, B.fwd[a].rows(), B.fwd[a].cols(), 2);
        B.bwd[a] = random_mat(rng, B.bwd[a].rows(), B.bwd[a].cols(), 2);
    }
    return B;
}

// Parameters on a star with v = (2, 1, ..., 1) satisfying v . res(lambda) = 0 and nonzero tops.
inline Lambda star_lambda(std::mt19937_64& rng, const QuiverMult& q) {
    std::uniform_int_distribution<int> u(-4, 4);
    for (;;) {
        Lambda lam;
        Gauss sum;
        for (int i = 0; i < q.size(); ++i) {
            std::vector<Gauss> l(q.mult[i]);
            for (auto& x : l) x = Gauss(u(rng));
            l.back() = random_nonzero(rng);
            lam.push_back(l);
            if (i > 0) sum += l[0];
        }
        lam[0][0] = -sum * Gauss(Rat(1, 2));
        if (!lam[0][0].is_zero()) return lam;
    }
}

inline IntVec star_dims(const QuiverMult& q) {
    IntVec v(q.size(), 1);
    v[0] = 2;
    return v;
}

// Stable point on the full level set of a star, searching seeds from the given one.
inline std::optional<GRep> stable_level_point(const QuiverMult& q, const IntVec& dims, const Lambda& lam, std::uint64_t seed) {
    for (std::uint64_t s = seed; s < seed + 40; ++s) {
        auto B = sample_level_point(q, dims, lam, s);
        if (B && is_stable(*B)) return B;
    }
    return std::nullopt;
}

inline const std::vector<std::vector<int>>& painleve_legs() {
    static const std::vector<std::vector<int>> legs = {{1, 1, 1, 1}, {2, 1, 1}, {3, 1}, {2, 2}, {4}};
    return legs;
}

// Stable full-level points on the Painleve stars, with their parameters.
struct LevelCase {
    GRep B;
    Lambda lam;
};

inline std::vector<LevelCase> level_cases(int per_shape, std::uint64_t seed) {
    std::vector<LevelCase> out;
    std::mt19937_64 rng(seed);
    for (const auto& legs : painleve_legs()) {
        QuiverMult q = star_quiver(legs);
        for (int t = 0; t < per_shape; ++t) {
            Lambda lam = star_lambda(rng, q);
            auto B = stable_level_point(q, star_dims(q), lam, rng() % 1000);
            if (B) out.push_back({*B, lam});
        }
    }
    return out;
}

} // namespace testutil
