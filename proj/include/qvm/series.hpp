#pragma once

#include <vector>

#include "qvm/linalg.hpp"
#include "qvm/mutation.hpp"

namespace qvm {

// g_0 + g_1 z + ... + g_{d-1} z^{d-1} in gl(V)[z]/z^d.
template <class T>
struct TruncMatPoly {
    int n = 0, d = 0;
    std::vector<Mat<T>> c;

    TruncMatPoly() = default;
    TruncMatPoly(int n_, int d_) : n(n_), d(d_), c(d_, Mat<T>(n_, n_)) {}

    static TruncMatPoly identity(int n, int d) {
        TruncMatPoly g(n, d);
        if (d > 0) g.c[0] = Mat<T>::identity(n);
        return g;
    }
    static TruncMatPoly constant(const Mat<T>& m, int d) {
        TruncMatPoly g(m.rows(), d);
        if (d > 0) g.c[0] = m;
        return g;
    }
    friend bool operator==(const TruncMatPoly& a, const TruncMatPoly& b) { return a.n == b.n && a.d == b.d && a.c == b.c; }
};

// eta_1 z^-1 + ... + eta_d z^-d, stored with c[k-1] = eta_k.
template <class T>
struct PrincipalPart {
    int n = 0, d = 0;
    std::vector<Mat<T>> c;

    PrincipalPart() = default;
    PrincipalPart(int n_, int d_) : n(n_), d(d_), c(d_, Mat<T>(n_, n_)) {}

    const Mat<T>& coeff(int k) const { return c[k - 1]; }
    Mat<T>& coeff(int k) { return c[k - 1]; }
    const Mat<T>& residue() const { return c[0]; }

    bool is_zero() const {
        for (const auto& m : c)
            if (!m.is_zero()) return false;
        return true;
    }
    PrincipalPart& operator+=(const PrincipalPart& o) {
        require_shape(n == o.n && d == o.d, "principal part sum shapes");
        for (int k = 0; k < d; ++k) c[k] += o.c[k];
        return *this;
    }
    PrincipalPart& operator-=(const PrincipalPart& o) {
        require_shape(n == o.n && d == o.d, "principal part difference shapes");
        for (int k = 0; k < d; ++k) c[k] -= o.c[k];
        return *this;
    }
    friend PrincipalPart operator+(PrincipalPart a, const PrincipalPart& b) { return a += b; }
    friend PrincipalPart operator-(PrincipalPart a, const PrincipalPart& b) { return a -= b; }
    friend bool operator==(const PrincipalPart& a, const PrincipalPart& b) { return a.n == b.n && a.d == b.d && a.c == b.c; }
    friend bool operator!=(const PrincipalPart& a, const PrincipalPart& b) { return !(a == b); }
};

// diag(lam(z) 1_p, 0) on C^n, lam given by its coefficients lam_1..lam_d.
template <class T>
PrincipalPart<T> split_diag(const std::vector<Gauss>& lam, int p, int n) {
    PrincipalPart<T> out(n, static_cast<int>(lam.size()));
    for (int k = 0; k < out.d; ++k)
        for (int i = 0; i < p; ++i) out.c[k](i, i) = lift<T>(lam[k]);
    return out;
}

template <class T>
PrincipalPart<T> scalar_part(const std::vector<Gauss>& lam, int n) {
    return split_diag<T>(lam, n, n);
}

// Pads or cuts a principal part to order d; cutting requires the dropped terms to vanish.
template <class T>
PrincipalPart<T> with_order(const PrincipalPart<T>& a, int d) {
    PrincipalPart<T> out(a.n, d);
    for (int k = 0; k < a.d; ++k) {
        if (k < d)
            out.c[k] = a.c[k];
        else
            require_shape(a.c[k].is_zero(), "principal part has terms beyond the requested order");
    }
    return out;
}

template <class T>
TruncMatPoly<T> trunc_mul(const TruncMatPoly<T>& g, const TruncMatPoly<T>& h) {
    require_shape(g.n == h.n && g.d == h.d, "trunc_mul shapes");
    TruncMatPoly<T> out(g.n, g.d);
    for (int a = 0; a < g.d; ++a)
        for (int b = 0; a + b < g.d; ++b) out.c[a + b] += g.c[a] * h.c[b];
    return out;
}

template <class T>
TruncMatPoly<T> trunc_inv(const TruncMatPoly<T>& g) {
    auto g0inv = try_inverse(g.c.at(0));
    if (!g0inv) fail(ErrorKind::NonInvertibleConstantTerm, "constant term is singular");
    TruncMatPoly<T> h(g.n, g.d);
    h.c[0] = *g0inv;
    for (int k = 1; k < g.d; ++k) {
        Mat<T> s(g.n, g.n);
        for (int j = 1; j <= k; ++j) s += g.c[j] * h.c[k - j];
        h.c[k] = -(*g0inv * s);
    }
    return h;
}

// Principal part of g eta g^{-1}.
template <class T>
PrincipalPart<T> coadjoint_act(const TruncMatPoly<T>& g, const PrincipalPart<T>& eta) {
    require_shape(g.n == eta.n && g.d >= eta.d, "coadjoint_act shapes");
    TruncMatPoly<T> h = trunc_inv(g);
    const int d = eta.d;
    PrincipalPart<T> out(eta.n, d);
    for (int m = 1; m <= d; ++m) {
        if (eta.coeff(m).is_zero()) continue;
        for (int a = 0; a < m; ++a) {
            Mat<T> left = g.c[a] * eta.coeff(m);
            for (int b = 0; a + b < m; ++b) out.coeff(m - a - b) += left * h.c[b];
        }
    }
    return out;
}

// Nilpotent shift on V (x) C[z]/z^d, dim V = v: block (m, m+1) is the identity.
template <class T>
Mat<T> shift_matrix(int v, int d) {
    Mat<T> N(v * d, v * d);
    bool lower = mutation::flags().lower_shift;
    for (int m = 0; m + 1 < d; ++m)
        for (int a = 0; a < v; ++a) {
            if (lower)
                N((m + 1) * v + a, m * v + a) = T(1);
            else
                N(m * v + a, (m + 1) * v + a) = T(1);
        }
    return N;
}

// Matrix of sum g_k N^k acting on V (x) C[z]/z^d.
template <class T>
Mat<T> poly_to_matrix(const TruncMatPoly<T>& g) {
    const int v = g.n, d = g.d;
    Mat<T> N = shift_matrix<T>(v, d);
    Mat<T> Nk = Mat<T>::identity(v * d);
    Mat<T> out(v * d, v * d);
    for (int k = 0; k < d; ++k) {
        Mat<T> diag(v * d, v * d);
        for (int m = 0; m < d; ++m) diag.set_block(m * v, m * v, g.c[k]);
        out += Nk * diag;
        Nk = Nk * N;
    }
    return out;
}

// Reads the polynomial back from a matrix commuting with the shift.
template <class T>
TruncMatPoly<T> matrix_to_poly(const Mat<T>& M, int v, int d) {
    require_shape(M.rows() == v * d && M.cols() == v * d, "matrix_to_poly shape");
    TruncMatPoly<T> g(v, d);
    for (int k = 0; k < d; ++k) g.c[k] = M.block(0, k * v, v, v);
    return g;
}

// sum_k tr_R[X N^{k-1}] z^-k with tr_R the partial trace over C[z]/z^d.
template <class T>
PrincipalPart<T> prj_partial_trace(const Mat<T>& X, int v, int d) {
    require_shape(X.rows() == v * d && X.cols() == v * d, "prj shape");
    PrincipalPart<T> out(v, d);
    for (int k = 1; k <= d; ++k)
        for (int p = 0; p + k - 1 < d; ++p) out.coeff(k) += X.block((p + k - 1) * v, p * v, v, v);
    return out;
}

// Principal part of -B_from (z - N)^{-1} B_to, order d.
template <class T>
PrincipalPart<T> resolvent_part(const Mat<T>& from, const Mat<T>& to, int v, int d) {
    require_shape(from.cols() == v * d && to.rows() == v * d && from.rows() == to.cols(), "resolvent shapes");
    Mat<T> N = shift_matrix<T>(v, d);
    PrincipalPart<T> out(from.rows(), d);
    Mat<T> cur = to;
    for (int k = 1; k <= d; ++k) {
        out.coeff(k) = -(from * cur);
        cur = N * cur;
    }
    return out;
}

template <class T>
struct SplitResult {
    TruncMatPoly<T> g; // g . eta is block diagonal
    int p = 0;         // size of the block whose leading eigenvalue is mu
    PrincipalPart<T> normal;
};

// Block-diagonalises eta whose leading term is semisimple with eigenvalues mu and 0; the
// mu-eigenspace comes first.
template <class T>
SplitResult<T> spectral_split(const PrincipalPart<T>& eta, const T& mu) {
    if (!is_unit(mu)) fail(ErrorKind::TopCoefficientZero, "split eigenvalue must be nonzero");
    const int n = eta.n, d = eta.d;
    if (d == 0) fail(ErrorKind::NotSemisimpleLeading, "empty principal part");
    const Mat<T>& top = eta.coeff(d);
    Mat<T> Kmu = kernel(top - Mat<T>::identity(n, mu));
    Mat<T> K0 = kernel(top);
    const int p = Kmu.cols();
    if (p + K0.cols() != n) fail(ErrorKind::NotSemisimpleLeading, "leading term is not semisimple with spectrum {mu, 0}");
    Mat<T> P = hstack<T>({Kmu, K0}, n);
    auto Pinv = try_inverse(P);
    if (!Pinv) fail(ErrorKind::NotSemisimpleLeading, "eigenspaces do not span");

    SplitResult<T> res;
    res.p = p;
    res.g = TruncMatPoly<T>::constant(*Pinv, d);
    res.normal = coadjoint_act(res.g, eta);
    const int q = n - p;
    T inv_mu = mu.inv();
    for (int k = d - 1; k >= 1; --k) {
        const Mat<T>& e = res.normal.coeff(k);
        Mat<T> S(n, n);
        S.set_block(0, p, e.block(0, p, p, q) * inv_mu);
        S.set_block(p, 0, -(e.block(p, 0, q, p) * inv_mu));
        if (S.is_zero()) continue;
        TruncMatPoly<T> h = TruncMatPoly<T>::identity(n, d);
        h.c[d - k] = S;
        res.normal = coadjoint_act(h, res.normal);
        res.g = trunc_mul(h, res.g);
    }
    for (int k = 1; k <= d; ++k) {
        const Mat<T>& e = res.normal.coeff(k);
        if (!e.block(0, p, p, q).is_zero() || !e.block(p, 0, q, p).is_zero())
            fail(ErrorKind::NotSemisimpleLeading, "block splitting did not converge");
    }
    return res;
}

} // namespace qvm
