#pragma once

#include <string>
#include <vector>

#include "qvm/kac_weyl.hpp"
#include "qvm/repvar.hpp"

namespace qvm {

template <class T>
struct ReflectionResult {
    RepPoint<T> B;
    Lambda lam;
    TruncMatPoly<T> g; // splitting gauge on V-hat_i
    int new_dim = 0;   // dim V'_i
};

// Reflection functor at vertex i. B must satisfy the level condition at i.
template <class T>
ReflectionResult<T> reflect_vertex(const RepPoint<T>& B, int i, const Lambda& lam) {
    B.check_shapes();
    const QuiverMult& q = B.quiver;
    require_shape(i >= 0 && i < q.size(), "vertex out of range");
    require_shape(static_cast<int>(lam.size()) == q.size(), "one parameter per vertex");
    const int d = q.mult[i];
    require_shape(static_cast<int>(lam[i].size()) == d, "lambda order differs from the multiplicity");
    if (lam[i].back().is_zero()) fail(ErrorKind::TopCoefficientZero, "vertex " + q.names[i]);

    CartanData cd = cartan_data(q);
    IntVec v2 = weyl_s(cd, i, B.dims);
    if (v2[i] < 0) fail(ErrorKind::NegativeTargetDimension, "s_i(v) is negative at vertex " + q.names[i]);
    const int v = static_cast<int>(B.dims[i]), vp = static_cast<int>(v2[i]);

    PolePair<T> p = gather_pair(B, i);
    if (prj_partial_trace(p.to * p.from, v, d) != minus_scalar<T>(lam[i], v))
        fail(ErrorKind::OrbitAssertionFailed, "level condition fails at vertex " + q.names[i]);
    const int nhat = p.from.rows();
    PrincipalPart<T> At = pole_phi(p, v, d) - scalar_part<T>(lam[i], nhat);

    std::vector<Gauss> neg;
    for (const auto& x : lam[i]) neg.push_back(-x);

    ReflectionResult<T> res;
    res.new_dim = vp;
    PolePair<T> np;
    if (vp == 0) {
        if (!At.is_zero()) fail(ErrorKind::OrbitAssertionFailed, "shifted residue term should vanish");
        np = {Mat<T>(0, nhat), Mat<T>(nhat, 0)};
        res.g = TruncMatPoly<T>::identity(nhat, d);
    } else {
        SplitResult<T> s = spectral_split(At, lift<T>(neg.back()));
        if (s.p != vp || s.normal != split_diag<T>(neg, vp, nhat))
            fail(ErrorKind::OrbitAssertionFailed, "shifted element is not on the reflected orbit");
        np = twist_pair(trunc_inv(s.g), build_pole_pair<T>(d, vp, nhat, neg), vp, d);
        res.g = s.g;
    }

    res.B = zero_point<T>(q, v2);
    for (size_t a = 0; a < q.arrows.size(); ++a)
        if (q.arrows[a].in != i && q.arrows[a].out != i) {
            res.B.fwd[a] = B.fwd[a];
            res.B.bwd[a] = B.bwd[a];
        }
    scatter_pair(res.B, i, np);

    if (pole_phi(np, vp, d) != At || prj_partial_trace(np.to * np.from, vp, d) != scalar_part<T>(lam[i], vp))
        fail(ErrorKind::OrbitAssertionFailed, "reflected pole pair misses its contract");
    res.lam = weyl_r(cd, i, lam);
    return res;
}

template <class T>
struct WordResult {
    RepPoint<T> B;
    Lambda lam;
};

// Letters applied in the order written.
template <class T>
WordResult<T> reflect_word(const RepPoint<T>& B, const Lambda& lam, const std::vector<int>& word) {
    WordResult<T> cur{B, lam};
    for (size_t k = 0; k < word.size(); ++k) {
        int i = word[k];
        require_shape(i >= 0 && i < B.quiver.size(), "word letter out of range");
        if (cur.lam[i].back().is_zero())
            fail(ErrorKind::TopCoefficientZero, "letter " + std::to_string(k) + " (vertex " + B.quiver.names[i] + ")");
        auto r = reflect_vertex(cur.B, i, cur.lam);
        cur = {std::move(r.B), std::move(r.lam)};
    }
    return cur;
}

} // namespace qvm
