#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qvm/kac_weyl.hpp"
#include "qvm/repvar.hpp"

namespace qvm {

struct PoleVertexInfo {
    int pole = -1;
    int base = -1;
    bool is_pole = false;
    bool is_irregular = false;
};

// A pole vertex has exactly one neighbour j, joined by one edge, and d_j = 1.
PoleVertexInfo pole_vertex_info(const QuiverMult& q, int i);

// The normalized quiver and how its arrows relate to the original ones. Vertex indices are unchanged.
struct NormalizedQuiver {
    QuiverMult original;
    QuiverMult q;
    int pole = -1, base = -1;
    int removed = -1;          // original arrow joining pole and base
    std::vector<int> source;   // per new arrow: original arrow index, -1 for the base -> pole arrows
    std::vector<char> copy;    // per new arrow: 1 for the copy rerouted to the pole
    std::vector<int> extra;    // the d_i - 2 arrows base -> pole, in order
};

NormalizedQuiver normalize_quiver(const QuiverMult& q, int i);

// v_j - v_i at the base, others unchanged.
IntVec normalize_dims(const NormalizedQuiver& nq, const IntVec& v);
// z^-1 (lambda_{i,1} + lambda_{j,1}) at the pole, z^-1 lambda_{j,1} at the base, others unchanged.
Lambda normalize_lambda(const NormalizedQuiver& nq, const Lambda& lam);

// Coordinates (a'_k, b'_k), k = 1..d-2, on the unipotent orbit through the residue-free part of
// diag(lambda 1_{V_i}, 0). a'_k maps the complement to V_i, b'_k maps V_i to the complement.
template <class T>
struct OrbitCoords {
    std::vector<Mat<T>> a, b;
    friend bool operator==(const OrbitCoords& x, const OrbitCoords& y) { return x.a == y.a && x.b == y.b; }
};

namespace detail {

// Laurent polynomials with matrix coefficients, keyed by the power of z.
template <class T>
using Laurent = std::map<int, Mat<T>>;

template <class T>
Laurent<T> laurent_mul(const Laurent<T>& f, const Laurent<T>& g) {
    Laurent<T> out;
    for (const auto& [p, a] : f)
        for (const auto& [q, b] : g) {
            Mat<T> m = a * b;
            auto it = out.find(p + q);
            if (it == out.end())
                out.emplace(p + q, std::move(m));
            else
                it->second += m;
        }
    return out;
}

template <class T>
void laurent_add(Laurent<T>& f, const Laurent<T>& g, const T& s) {
    for (const auto& [p, b] : g) {
        auto it = f.find(p);
        if (it == f.end())
            f.emplace(p, b * s);
        else
            it->second += b * s;
    }
}

// Writes the z^-2 .. z^-d part of f into block (r0, c0) of out.
template <class T>
void put_block(PrincipalPart<T>& out, int r0, int c0, const Laurent<T>& f) {
    for (const auto& [p, m] : f)
        if (p <= -2 && -p <= out.d) out.coeff(-p).set_block(r0, c0, m);
}

} // namespace detail

// Element of the orbit with the given coordinates:
// B11 = lambda^0 + a'b', B12 = -a', B21 = lambda^0 b' + b'a'b', B22 = -b'a', all taken mod z^-1,
// where a'(z) = sum a'_k z^{-k-1} and b'(z) = sum b'_k z^k.
template <class T>
PrincipalPart<T> assemble_orbit_element(const OrbitCoords<T>& c, const std::vector<Gauss>& lam, int vi, int vj) {
    const int d = static_cast<int>(lam.size());
    require_shape(d >= 2, "orbit coordinates need order at least two");
    if (lam.back().is_zero()) fail(ErrorKind::TopCoefficientZero, "orbit coordinates");
    require_shape(static_cast<int>(c.a.size()) == d - 2 && static_cast<int>(c.b.size()) == d - 2, "d - 2 coordinates expected");
    const int q = vj - vi;
    detail::Laurent<T> a, b, l0;
    for (int k = 1; k <= d - 2; ++k) {
        require_shape(c.a[k - 1].rows() == vi && c.a[k - 1].cols() == q, "a' shape");
        require_shape(c.b[k - 1].rows() == q && c.b[k - 1].cols() == vi, "b' shape");
        a.emplace(-k - 1, c.a[k - 1]);
        b.emplace(k, c.b[k - 1]);
    }
    for (int m = 2; m <= d; ++m) l0.emplace(-m, Mat<T>::identity(vi, lift<T>(lam[m - 1])));
    const T one(1), minus(-1);
    auto ab = detail::laurent_mul(a, b), ba = detail::laurent_mul(b, a);
    detail::Laurent<T> b11 = l0, b12, b21 = detail::laurent_mul(b, l0), b22;
    detail::laurent_add(b11, ab, one);
    detail::laurent_add(b12, a, minus);
    detail::laurent_add(b21, detail::laurent_mul(b, ab), one);
    detail::laurent_add(b22, ba, minus);
    PrincipalPart<T> out(vj, d);
    detail::put_block(out, 0, 0, b11);
    detail::put_block(out, 0, vi, b12);
    detail::put_block(out, vi, 0, b21);
    detail::put_block(out, vi, vi, b22);
    return out;
}

// Inverse of assemble_orbit_element: a' = -B12, then b' from B21 = b' B11 mod z^-1.
template <class T>
OrbitCoords<T> extract_orbit_coords(const PrincipalPart<T>& B, int vi, const std::vector<Gauss>& lam) {
    const int d = static_cast<int>(lam.size()), n = B.n, q = n - vi;
    require_shape(B.d == d && d >= 2 && vi >= 0 && q >= 0, "orbit element shape");
    if (lam.back().is_zero()) fail(ErrorKind::TopCoefficientZero, "orbit coordinates");
    if (!B.residue().is_zero() || B.coeff(d) != split_diag<T>({lam.back()}, vi, n).coeff(1))
        fail(ErrorKind::OrbitAssertionFailed, "not a residue-free element with the expected leading term");
    OrbitCoords<T> c;
    for (int k = 1; k <= d - 2; ++k) c.a.push_back(-B.coeff(k + 1).block(0, vi, vi, q));
    const T inv_top = lift<T>(lam.back()).inv();
    // coefficient z^{-(d-k)} of B21 is sum_{l <= k} b'_l B11_{d-k+l}
    for (int k = 1; k <= d - 2; ++k) {
        Mat<T> rhs = B.coeff(d - k).block(vi, 0, q, vi);
        for (int l = 1; l < k; ++l) rhs -= c.b[l - 1] * B.coeff(d - k + l).block(0, 0, vi, vi);
        c.b.push_back(rhs * inv_top);
    }
    if (assemble_orbit_element(c, lam, vi, n) != B) fail(ErrorKind::OrbitAssertionFailed, "element is off the normalized orbit");
    return c;
}

// -sum_k diag(a'_k b'_k, -b'_k a'_k): the residue left after splitting an orbit element.
template <class T>
Mat<T> orbit_residue(const OrbitCoords<T>& c, int vi, int vj) {
    Mat<T> out(vj, vj);
    for (size_t k = 0; k < c.a.size(); ++k) {
        out.add_block(0, 0, -(c.a[k] * c.b[k]));
        out.add_block(vi, vi, c.b[k] * c.a[k]);
    }
    return out;
}

template <class T>
struct NormalizedBundle {
    NormalizedQuiver nq;
    IntVec v;
    Lambda lam;
    RepPoint<T> B;
    OrbitCoords<T> coords;
    Mat<T> frame; // V_j -> V_i + V_j/V_i
};

namespace detail {

void require_irregular(const PoleVertexInfo& info, const QuiverMult& q, int i);

} // namespace detail

// Shifting-trick bijection at the irregular pole i. B must lie on the level lambda.
template <class T>
NormalizedBundle<T> normalize_point(const RepPoint<T>& B, const Lambda& lam, int i) {
    B.check_shapes();
    const QuiverMult& q = B.quiver;
    require_shape(i >= 0 && i < q.size(), "vertex out of range");
    detail::require_irregular(pole_vertex_info(q, i), q, i);
    require_shape(static_cast<int>(lam.size()) == q.size() && static_cast<int>(lam[i].size()) == q.mult[i], "lambda shape");
    if (lam[i].back().is_zero()) fail(ErrorKind::TopCoefficientZero, "vertex " + q.names[i]);
    if (!check_level(B, lam)) fail(ErrorKind::OrbitAssertionFailed, "point is off the level set");

    NormalizedBundle<T> out;
    out.nq = normalize_quiver(q, i);
    const int j = out.nq.base, d = q.mult[i];
    const int vi = static_cast<int>(B.dims[i]), vj = static_cast<int>(B.dims[j]), rest = vj - vi;

    PrincipalPart<T> A = pole_phi(gather_pair(B, i), vi, d);
    SplitResult<T> s = spectral_split(A, lift<T>(lam[i].back()));
    if (s.p != vi || s.normal != split_diag<T>(lam[i], vi, vj))
        fail(ErrorKind::OrbitAssertionFailed, "pole element is not on the expected orbit");
    const Mat<T>& P = s.g.c[0];
    const Mat<T> Pinv = inverse(P);
    PrincipalPart<T> A0 = coadjoint_act(TruncMatPoly<T>::constant(P, d), A);
    A0.coeff(1) = Mat<T>(vj, vj);
    out.coords = extract_orbit_coords(A0, vi, lam[i]);
    out.frame = P;

    out.v = normalize_dims(out.nq, B.dims);
    out.lam = normalize_lambda(out.nq, lam);
    out.B = zero_point<T>(out.nq.q, out.v);
    for (size_t a = 0; a < out.nq.q.arrows.size(); ++a) {
        const int src = out.nq.source[a];
        if (src < 0) continue;
        const Arrow& o = q.arrows[src];
        if (o.in != j && o.out != j) {
            out.B.fwd[a] = B.fwd[src];
            out.B.bwd[a] = B.bwd[src];
            continue;
        }
        // rows (or columns) on the V_i summand go to the copy at the pole
        const int off = out.nq.copy[a] ? 0 : vi, len = out.nq.copy[a] ? vi : rest;
        if (o.in == j) {
            Mat<T> f = P * B.fwd[src], g = B.bwd[src] * Pinv;
            out.B.fwd[a] = f.block(off, 0, len, f.cols());
            out.B.bwd[a] = g.block(0, off, g.rows(), len);
        } else {
            Mat<T> f = B.fwd[src] * Pinv, g = P * B.bwd[src];
            out.B.fwd[a] = f.block(0, off, f.rows(), len);
            out.B.bwd[a] = g.block(off, 0, len, g.cols());
        }
    }
    for (size_t k = 0; k < out.nq.extra.size(); ++k) {
        out.B.fwd[out.nq.extra[k]] = out.coords.a[k];
        out.B.bwd[out.nq.extra[k]] = out.coords.b[k];
    }
    if (!check_level(out.B, out.lam)) fail(ErrorKind::OrbitAssertionFailed, "normalized point misses its level");
    return out;
}

template <class T>
struct DenormalizedPoint {
    RepPoint<T> B;
    Lambda lam;
    IntVec v;
};

// Inverse of normalize_point up to gauge; lam_i restores the higher coefficients at the pole.
template <class T>
DenormalizedPoint<T> denormalize_point(const NormalizedBundle<T>& nb, const std::vector<Gauss>& lam_i) {
    const NormalizedQuiver& nq = nb.nq;
    const QuiverMult& q = nq.original;
    const int i = nq.pole, j = nq.base, d = q.mult[i];
    nb.B.check_shapes();
    require_shape(nb.B.quiver == nq.q, "bundle point lives on another quiver");
    require_shape(static_cast<int>(lam_i.size()) == d, "pole parameter has the wrong order");
    if (lam_i.back().is_zero()) fail(ErrorKind::TopCoefficientZero, "vertex " + q.names[i]);
    const Lambda& chk = nb.lam;
    if (lam_i[0] + chk[j][0] != chk[i][0]) fail(ErrorKind::OrbitAssertionFailed, "pole residue does not match the bundle");

    DenormalizedPoint<T> out;
    out.v = nb.B.dims;
    out.v[j] += out.v[i];
    out.lam = chk;
    out.lam[i] = lam_i;
    const int vi = static_cast<int>(out.v[i]), vj = static_cast<int>(out.v[j]);

    out.B = zero_point<T>(q, out.v);
    std::vector<int> kept(q.arrows.size(), -1), copied(q.arrows.size(), -1);
    for (size_t a = 0; a < nq.q.arrows.size(); ++a)
        if (nq.source[a] >= 0) (nq.copy[a] ? copied : kept)[nq.source[a]] = static_cast<int>(a);
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        if (static_cast<int>(a) == nq.removed) continue;
        const Arrow& o = q.arrows[a];
        const int k = kept[a];
        if (o.in != j && o.out != j) {
            out.B.fwd[a] = nb.B.fwd[k];
            out.B.bwd[a] = nb.B.bwd[k];
            continue;
        }
        const int c = copied[a];
        if (o.in == j) {
            out.B.fwd[a] = vstack<T>({nb.B.fwd[c], nb.B.fwd[k]}, nb.B.fwd[k].cols());
            out.B.bwd[a] = hstack<T>({nb.B.bwd[c], nb.B.bwd[k]}, nb.B.bwd[k].rows());
        } else {
            out.B.fwd[a] = hstack<T>({nb.B.fwd[c], nb.B.fwd[k]}, nb.B.fwd[k].rows());
            out.B.bwd[a] = vstack<T>({nb.B.bwd[c], nb.B.bwd[k]}, nb.B.bwd[k].cols());
        }
    }
    OrbitCoords<T> coords;
    for (int e : nq.extra) {
        coords.a.push_back(nb.B.fwd[e]);
        coords.b.push_back(nb.B.bwd[e]);
    }
    // the pole edge is still zero, so this is the moment of the remaining arrows
    Mat<T> mu_rest = moment_map(out.B)[j].residue();
    PrincipalPart<T> A = assemble_orbit_element(coords, lam_i, vi, vj);
    A.coeff(1) -= mu_rest + Mat<T>::identity(vj, lift<T>(chk[j][0]));

    PolePair<T> np;
    if (vi == 0) {
        if (!A.is_zero()) fail(ErrorKind::OrbitAssertionFailed, "pole element should vanish");
        np = {Mat<T>(0, vj), Mat<T>(vj, 0)};
    } else {
        SplitResult<T> s = spectral_split(A, lift<T>(lam_i.back()));
        if (s.p != vi || s.normal != split_diag<T>(lam_i, vi, vj))
            fail(ErrorKind::OrbitAssertionFailed, "shifted element is not on the pole orbit");
        np = twist_pair(trunc_inv(s.g), build_pole_pair<T>(d, vi, vj, lam_i), vi, d);
    }
    scatter_pair(out.B, i, np);
    if (!check_level(out.B, out.lam)) fail(ErrorKind::OrbitAssertionFailed, "restored point misses its level");
    return out;
}

struct PhiWeylReport {
    bool form = false;          // t(phi) D'C' phi = D C
    bool residues = false;      // res of the normalized lambda = t(phi)^-1 res lambda, and the pairing is kept
    bool swap = false;          // exchanging pole and base fixes the normalized Cartan matrix
    bool equivariance = false;  // the map (lambda, v) intertwines the two Weyl actions
    bool all() const { return form && residues && swap && equivariance; }
};

PhiWeylReport phi_weyl_check(const QuiverMult& q, int i, int trials = 50, std::uint64_t seed = 1);

} // namespace qvm
