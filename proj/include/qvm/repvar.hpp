#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "qvm/quiver.hpp"
#include "qvm/series.hpp"

namespace qvm {

// One matrix per arrow and orientation. fwd[a] maps out(a) -> in(a), bwd[a] the reverse.
template <class T>
struct RepPoint {
    QuiverMult quiver;
    IntVec dims;
    std::vector<Mat<T>> fwd, bwd;

    int size_at(int i) const { return static_cast<int>(dims[i]) * quiver.mult[i]; }
    int total_size() const {
        int n = 0;
        for (int i = 0; i < quiver.size(); ++i) n += size_at(i);
        return n;
    }

    // B_h and B_hbar for a half-arrow.
    const Mat<T>& map(const HalfArrow& h) const { return h.reversed ? bwd[h.arrow] : fwd[h.arrow]; }
    const Mat<T>& map_back(const HalfArrow& h) const { return h.reversed ? fwd[h.arrow] : bwd[h.arrow]; }
    Mat<T>& map(const HalfArrow& h) { return h.reversed ? bwd[h.arrow] : fwd[h.arrow]; }
    Mat<T>& map_back(const HalfArrow& h) { return h.reversed ? fwd[h.arrow] : bwd[h.arrow]; }

    void check_shapes() const {
        require_shape(static_cast<int>(dims.size()) == quiver.size(), "one dimension per vertex");
        require_shape(fwd.size() == quiver.arrows.size() && bwd.size() == quiver.arrows.size(), "one matrix pair per arrow");
        for (long long x : dims) require_shape(x >= 0, "negative dimension");
        for (size_t a = 0; a < quiver.arrows.size(); ++a) {
            const Arrow& ar = quiver.arrows[a];
            require_shape(fwd[a].rows() == size_at(ar.in) && fwd[a].cols() == size_at(ar.out),
                          "arrow '" + ar.id + "' forward matrix has the wrong shape");
            require_shape(bwd[a].rows() == size_at(ar.out) && bwd[a].cols() == size_at(ar.in),
                          "arrow '" + ar.id + "' backward matrix has the wrong shape");
        }
    }
    friend bool operator==(const RepPoint& a, const RepPoint& b) {
        return a.quiver == b.quiver && a.dims == b.dims && a.fwd == b.fwd && a.bwd == b.bwd;
    }
};

using GRep = RepPoint<Gauss>;
using JetRep = RepPoint<GJet>;
using Gauge = std::vector<TruncMatPoly<Gauss>>;

template <class T>
RepPoint<T> zero_point(const QuiverMult& q, const IntVec& dims) {
    RepPoint<T> B;
    B.quiver = q;
    B.dims = dims;
    for (const Arrow& a : q.arrows) {
        int out = static_cast<int>(dims[a.out]) * q.mult[a.out];
        int in = static_cast<int>(dims[a.in]) * q.mult[a.in];
        B.fwd.emplace_back(in, out);
        B.bwd.emplace_back(out, in);
    }
    return B;
}

template <class U, class T, class F>
RepPoint<U> map_point(const RepPoint<T>& B, F f) {
    RepPoint<U> out;
    out.quiver = B.quiver;
    out.dims = B.dims;
    for (const auto& m : B.fwd) out.fwd.push_back(f(m));
    for (const auto& m : B.bwd) out.bwd.push_back(f(m));
    return out;
}

template <class T>
RepPoint<T> lift_point(const GRep& B) {
    return map_point<T>(B, [](const GMat& m) { return lift_mat<T>(m); });
}

template <class T>
GRep value_point(const RepPoint<T>& B) {
    return map_point<Gauss>(B, [](const Mat<T>& m) { return value_mat(m); });
}

inline GRep tangent_point(const JetRep& B) {
    return map_point<Gauss>(B, [](const Mat<GJet>& m) { return tangent_mat(m); });
}

inline JetRep make_jet_point(const GRep& base, const GRep& tangent) {
    JetRep J = lift_point<GJet>(base);
    for (size_t a = 0; a < base.fwd.size(); ++a) {
        J.fwd[a] = make_jet(base.fwd[a], tangent.fwd[a]);
        J.bwd[a] = make_jet(base.bwd[a], tangent.bwd[a]);
    }
    return J;
}

inline int moment_sign(const HalfArrow& h) { return mutation::flags().flip_moment_sign ? -h.eps : h.eps; }

// sum over half-arrows into i of eps(h) B_h B_hbar, as an endomorphism of V_i (x) R_{d_i}
template <class T>
Mat<T> moment_matrix(const RepPoint<T>& B, int i) {
    Mat<T> X(B.size_at(i), B.size_at(i));
    for (const HalfArrow& h : half_arrows(B.quiver)) {
        if (h.in != i) continue;
        Mat<T> p = B.map(h) * B.map_back(h);
        if (moment_sign(h) < 0)
            X -= p;
        else
            X += p;
    }
    return X;
}

template <class T>
std::vector<PrincipalPart<T>> moment_map(const RepPoint<T>& B) {
    std::vector<PrincipalPart<T>> mu;
    for (int i = 0; i < B.quiver.size(); ++i)
        mu.push_back(prj_partial_trace(moment_matrix(B, i), static_cast<int>(B.dims[i]), B.quiver.mult[i]));
    return mu;
}

template <class T>
PrincipalPart<T> minus_scalar(const std::vector<Gauss>& lam, int n) {
    std::vector<Gauss> neg;
    for (const auto& x : lam) neg.push_back(-x);
    return scalar_part<T>(neg, n);
}

template <class T>
bool check_level_at(const RepPoint<T>& B, const Lambda& lam, int i, const PrincipalPart<T>& mu_i) {
    require_shape(static_cast<int>(lam[i].size()) == B.quiver.mult[i], "lambda order differs from the multiplicity");
    return mu_i == minus_scalar<T>(lam[i], static_cast<int>(B.dims[i]));
}

template <class T>
bool check_level(const RepPoint<T>& B, const Lambda& lam) {
    require_shape(static_cast<int>(lam.size()) == B.quiver.size(), "one parameter per vertex");
    auto mu = moment_map(B);
    for (int i = 0; i < B.quiver.size(); ++i)
        if (!check_level_at(B, lam, i, mu[i])) return false;
    return true;
}

template <class T>
RepPoint<T> gauge_act(const std::vector<TruncMatPoly<T>>& g, const RepPoint<T>& B) {
    require_shape(static_cast<int>(g.size()) == B.quiver.size(), "one gauge factor per vertex");
    std::vector<Mat<T>> G, Ginv;
    for (int i = 0; i < B.quiver.size(); ++i) {
        require_shape(g[i].n == B.dims[i] && g[i].d == B.quiver.mult[i], "gauge factor shape");
        G.push_back(poly_to_matrix(g[i]));
        Ginv.push_back(poly_to_matrix(trunc_inv(g[i])));
    }
    RepPoint<T> out = B;
    for (size_t a = 0; a < B.quiver.arrows.size(); ++a) {
        const Arrow& ar = B.quiver.arrows[a];
        out.fwd[a] = G[ar.in] * B.fwd[a] * Ginv[ar.out];
        out.bwd[a] = G[ar.out] * B.bwd[a] * Ginv[ar.in];
    }
    return out;
}

// Summands of V-hat_i: half-arrows into i, ordered by (source vertex, arrow id).
struct HatSlot {
    HalfArrow h;
    int offset, size;
};

std::vector<HatSlot> hat_layout(const QuiverMult& q, const IntVec& dims, int i);

inline int hat_size(const std::vector<HatSlot>& slots) {
    int n = 0;
    for (const auto& s : slots) n += s.size;
    return n;
}

template <class T>
struct PolePair {
    Mat<T> to;   // B_{i->}: V-hat_i -> V_i (x) R_{d_i}
    Mat<T> from; // B_{<-i}: V_i (x) R_{d_i} -> V-hat_i
};

template <class T>
PolePair<T> gather_pair(const RepPoint<T>& B, int i) {
    auto slots = hat_layout(B.quiver, B.dims, i);
    const int n = hat_size(slots), m = B.size_at(i);
    PolePair<T> p{Mat<T>(m, n), Mat<T>(n, m)};
    for (const auto& s : slots) {
        Mat<T> to = B.map(s.h);
        if (s.h.eps < 0) to = -to;
        p.to.set_block(0, s.offset, to);
        p.from.set_block(s.offset, 0, B.map_back(s.h));
    }
    return p;
}

// Writes a pole pair back into the arrows at i; the point must already have the target dims.
template <class T>
void scatter_pair(RepPoint<T>& B, int i, const PolePair<T>& p) {
    auto slots = hat_layout(B.quiver, B.dims, i);
    const int m = B.size_at(i);
    require_shape(p.to.rows() == m && p.to.cols() == hat_size(slots) && p.from.rows() == hat_size(slots) && p.from.cols() == m,
                  "pole pair shape");
    for (const auto& s : slots) {
        Mat<T> to = p.to.block(0, s.offset, m, s.size);
        if (s.h.eps < 0) to = -to;
        B.map(s.h) = to;
        B.map_back(s.h) = p.from.block(s.offset, 0, s.size, m);
    }
}

// Phi_i = -B_{<-i} (z - N_i)^{-1} B_{i->} in g*_{d_i}(V-hat_i).
template <class T>
PrincipalPart<T> pole_phi(const PolePair<T>& p, int v, int d) {
    return resolvent_part(p.from, p.to, v, d);
}

// Pattern matrices with Phi = diag(lam 1_v, 0) and moment -lam 1.
template <class T>
PolePair<T> build_pole_pair(int d, int v, int nhat, const std::vector<Gauss>& lam) {
    require_shape(static_cast<int>(lam.size()) == d && d >= 1, "pole pair needs d coefficients");
    if (lam.back().is_zero()) fail(ErrorKind::TopCoefficientZero, "top coefficient of lambda vanishes");
    if (v > nhat) fail(ErrorKind::DimensionTooLarge, "v_i exceeds dim of the neighbour space");
    PolePair<T> p{Mat<T>(v * d, nhat), Mat<T>(nhat, v * d)};
    for (int a = 0; a < v; ++a) {
        p.to((d - 1) * v + a, a) = T(1);
        for (int m = 0; m < d; ++m) p.from(a, m * v + a) = lift<T>(-lam[d - 1 - m]);
    }
    return p;
}

// Twisted action of h in G_d(V-hat) on a pole pair; Phi moves by h . Phi and the moment is unchanged.
template <class T>
PolePair<T> twist_pair(const TruncMatPoly<T>& h, const PolePair<T>& p, int v, int d) {
    TruncMatPoly<T> hinv = trunc_inv(h);
    Mat<T> N = shift_matrix<T>(v, d);
    PolePair<T> out{Mat<T>(p.to.rows(), p.to.cols()), Mat<T>(p.from.rows(), p.from.cols())};
    Mat<T> Nk = Mat<T>::identity(v * d);
    for (int k = 0; k < d; ++k) {
        out.from += h.c[k] * p.from * Nk;
        out.to += Nk * p.to * hinv.c[k];
        Nk = Nk * N;
    }
    return out;
}

template <class T>
T symplectic_pair(const RepPoint<T>& d1, const RepPoint<T>& d2) {
    require_shape(d1.dims == d2.dims && d1.fwd.size() == d2.fwd.size(), "tangent shapes differ");
    T s(0);
    for (const HalfArrow& h : half_arrows(d1.quiver)) {
        T t = (d1.map(h) * d2.map_back(h)).trace() - (d2.map(h) * d1.map_back(h)).trace();
        if (h.eps < 0)
            s -= t;
        else
            s += t;
    }
    return s * lift<T>(Gauss(Rat(1, 2)));
}

// Differential of the moment map at B applied to delta.
std::vector<PrincipalPart<Gauss>> moment_differential(const GRep& B, const GRep& delta);

bool is_stable(const GRep& B);

// Witness gauge g with g . B = B2, if one exists.
std::optional<Gauge> isomorphic_points(const GRep& B, const GRep& B2);

// Same underlying graph, arrows possibly reversed; reversed pairs get one sign flip.
GRep reorient_point(const GRep& B, const QuiverMult& target);

struct SampledPoint {
    GRep B;
    Lambda lam;               // -mu_j where it is scalar, zero elsewhere
    std::vector<char> scalar; // whether mu_j is scalar
};

struct SampleOptions {
    int box = 2;
};

// Pattern matrices at i moved by random twisted and vertex gauges; random matrices elsewhere.
SampledPoint sample_point(const QuiverMult& q, const IntVec& dims, int i, const std::vector<Gauss>& lam_i,
                          std::uint64_t seed, SampleOptions opt = {});

// A point on the full level set: random forward matrices, backward matrices solved linearly.
std::optional<GRep> sample_level_point(const QuiverMult& q, const IntVec& dims, const Lambda& lam, std::uint64_t seed,
                                       SampleOptions opt = {});

// Tangent vectors annihilating the differential of every moment component.
std::vector<GRep> level_tangents(const GRep& B, int count, std::uint64_t seed, SampleOptions opt = {});

// Infinitesimal gauge direction xi_in B_h - B_h xi_out.
GRep gauge_direction(const Gauge& xi, const GRep& B);

} // namespace qvm
