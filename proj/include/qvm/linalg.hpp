#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qvm/matrix.hpp"

namespace qvm {

template <class T>
struct Echelon {
    Mat<T> R;
    std::vector<int> pivots;
    int rank() const { return static_cast<int>(pivots.size()); }
};

// Reduced row echelon form. The pivot in each column is the first remaining row whose entry is a
// unit, so over jets the pivots are fixed by the underlying values. Rows left without a pivot must
// vanish exactly; otherwise the module is not free and we refuse.
template <class T>
Echelon<T> rref(Mat<T> m) {
    const int R = m.rows(), C = m.cols();
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < C && r < R; ++c) {
        int p = -1;
        for (int i = r; i < R; ++i)
            if (is_unit(m(i, c))) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < C; ++j) std::swap(m(p, j), m(r, j));
        T inv = m(r, c).inv();
        // over jets a skipped column may still carry nilpotent entries, so sweep every column
        for (int j = 0; j < C; ++j)
            if (!is_zero(m(r, j))) m(r, j) *= inv;
        for (int i = 0; i < R; ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            T f = m(i, c);
            for (int j = 0; j < C; ++j)
                if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    for (int i = r; i < R; ++i)
        for (int j = 0; j < C; ++j)
            if (!is_zero(m(i, j))) fail(ErrorKind::NonGeneric, "elimination met a nilpotent residue");
    return {std::move(m), std::move(piv)};
}

template <class T>
int rank(const Mat<T>& m) {
    return rref(m).rank();
}

// Columns form a basis of the kernel, one per free column.
template <class T>
Mat<T> kernel(const Mat<T>& m) {
    Echelon<T> e = rref(m);
    const int n = m.cols();
    std::vector<char> is_piv(n, 0);
    for (int c : e.pivots) is_piv[c] = 1;
    std::vector<int> free;
    for (int c = 0; c < n; ++c)
        if (!is_piv[c]) free.push_back(c);
    Mat<T> K(n, static_cast<int>(free.size()));
    for (size_t f = 0; f < free.size(); ++f) {
        K(free[f], static_cast<int>(f)) = T(1);
        for (size_t k = 0; k < e.pivots.size(); ++k)
            K(e.pivots[k], static_cast<int>(f)) = -e.R(static_cast<int>(k), free[f]);
    }
    return K;
}

// Independent columns of m, chosen by the pivot rule.
template <class T>
Mat<T> image_basis(const Mat<T>& m) {
    Echelon<T> e = rref(m);
    Mat<T> B(m.rows(), e.rank());
    for (int k = 0; k < e.rank(); ++k)
        for (int i = 0; i < m.rows(); ++i) B(i, k) = m(i, e.pivots[k]);
    return B;
}

// Some X with A X = B, or nothing.
template <class T>
std::optional<Mat<T>> solve(const Mat<T>& A, const Mat<T>& B) {
    require_shape(A.rows() == B.rows(), "solve: row mismatch");
    const int n = A.cols();
    Echelon<T> e = rref(hstack<T>({A, B}, A.rows()));
    Mat<T> X(n, B.cols());
    for (int k = 0; k < e.rank(); ++k) {
        int c = e.pivots[k];
        if (c >= n) return std::nullopt;
        for (int j = 0; j < B.cols(); ++j) X(c, j) = e.R(k, n + j);
    }
    return X;
}

// Some Z with Z A = X, or nothing.
template <class T>
std::optional<Mat<T>> left_solve(const Mat<T>& X, const Mat<T>& A) {
    auto Zt = solve(A.transpose(), X.transpose());
    if (!Zt) return std::nullopt;
    return Zt->transpose();
}

template <class T>
std::optional<Mat<T>> try_inverse(const Mat<T>& m) {
    require_shape(m.square(), "inverse of non-square matrix");
    const int n = m.rows();
    Echelon<T> e = rref(hstack<T>({m, Mat<T>::identity(n)}, n));
    if (e.rank() < n || (n > 0 && e.pivots[n - 1] >= n)) return std::nullopt;
    return e.R.block(0, n, n, n);
}

template <class T>
Mat<T> inverse(const Mat<T>& m) {
    auto inv = try_inverse(m);
    if (!inv) fail(ErrorKind::NonGeneric, "singular matrix");
    return *inv;
}

template <class T>
bool is_invertible(const Mat<T>& m) {
    return m.square() && rank(m) == m.rows();
}

template <class T>
struct RankFactor {
    int r;
    Mat<T> P; // n x r, injective
    Mat<T> Q; // r x m, surjective
};

// M = P Q with P the pivot columns of M and Q the nonzero rows of its echelon form.
template <class T>
RankFactor<T> full_rank_factor(const Mat<T>& M) {
    Echelon<T> e = rref(M);
    int r = e.rank();
    Mat<T> P(M.rows(), r);
    for (int k = 0; k < r; ++k)
        for (int i = 0; i < M.rows(); ++i) P(i, k) = M(i, e.pivots[k]);
    return {r, std::move(P), e.R.block(0, 0, r, M.cols())};
}

} // namespace qvm
