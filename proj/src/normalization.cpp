#include "qvm/normalization.hpp"

#include <random>
#include <utility>

namespace qvm {

PoleVertexInfo pole_vertex_info(const QuiverMult& q, int i) {
    require_shape(i >= 0 && i < q.size(), "vertex out of range");
    PoleVertexInfo info;
    info.pole = i;
    std::vector<int> edges(q.size(), 0);
    for (const Arrow& a : q.arrows) {
        if (a.out == i) ++edges[a.in];
        if (a.in == i) ++edges[a.out];
    }
    int nb = 0;
    for (int k = 0; k < q.size(); ++k)
        if (edges[k]) {
            ++nb;
            info.base = k;
        }
    info.is_pole = nb == 1 && edges[info.base] == 1 && q.mult[info.base] == 1;
    if (!info.is_pole) info.base = -1;
    info.is_irregular = info.is_pole && q.mult[i] > 1;
    return info;
}

namespace detail {

void require_irregular(const PoleVertexInfo& info, const QuiverMult& q, int i) {
    if (!info.is_irregular) fail(ErrorKind::NotIrregularPole, "vertex " + q.names[i]);
}

} // namespace detail

NormalizedQuiver normalize_quiver(const QuiverMult& q, int i) {
    PoleVertexInfo info = pole_vertex_info(q, i);
    detail::require_irregular(info, q, i);
    NormalizedQuiver nq;
    nq.original = q;
    nq.pole = i;
    nq.base = info.base;
    const int j = info.base;
    nq.q.names = q.names;
    nq.q.mult = q.mult;
    nq.q.mult[i] = 1;
    auto add = [&](Arrow a, int src, bool copy) {
        nq.q.arrows.push_back(std::move(a));
        nq.source.push_back(src);
        nq.copy.push_back(copy);
    };
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        const Arrow& o = q.arrows[a];
        if (o.in == i || o.out == i)
            nq.removed = static_cast<int>(a);
        else
            add(o, static_cast<int>(a), false);
    }
    const std::string tag = "." + q.names[i];
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        const Arrow& o = q.arrows[a];
        if (static_cast<int>(a) == nq.removed) continue;
        if (o.in == j) add({o.id + tag, o.out, i}, static_cast<int>(a), true);
        if (o.out == j) add({o.id + tag, i, o.in}, static_cast<int>(a), true);
    }
    for (int k = 1; k <= q.mult[i] - 2; ++k) {
        nq.extra.push_back(static_cast<int>(nq.q.arrows.size()));
        add({"n" + std::to_string(k) + tag, j, i}, -1, false);
    }
    nq.q.validate();
    return nq;
}

IntVec normalize_dims(const NormalizedQuiver& nq, const IntVec& v) {
    require_shape(static_cast<int>(v.size()) == nq.q.size(), "dimension vector size");
    IntVec out = v;
    out[nq.base] -= v[nq.pole];
    return out;
}

Lambda normalize_lambda(const NormalizedQuiver& nq, const Lambda& lam) {
    require_shape(static_cast<int>(lam.size()) == nq.q.size(), "lambda size");
    Lambda out = lam;
    const int i = nq.pole, j = nq.base;
    out[i] = {lam[i].at(0) + lam[j].at(0)};
    out[j] = {lam[j].at(0)};
    return out;
}

namespace {

long long form(const IntMat& S, const IntVec& x, const IntVec& y) {
    long long s = 0;
    for (size_t a = 0; a < x.size(); ++a)
        for (size_t b = 0; b < y.size(); ++b) s += x[a] * S[a][b] * y[b];
    return s;
}

template <class V>
V swapped(V x, int i, int j) {
    std::swap(x[i], x[j]);
    return x;
}

} // namespace

PhiWeylReport phi_weyl_check(const QuiverMult& q, int i, int trials, std::uint64_t seed) {
    NormalizedQuiver nq = normalize_quiver(q, i);
    const int n = q.size(), j = nq.base;
    CartanData cd = cartan_data(q), cc = cartan_data(nq.q);
    PhiWeylReport rep;

    // phi = 1 - E_{ji}
    IntMat phi(n, IntVec(n, 0));
    for (int k = 0; k < n; ++k) phi[k][k] = 1;
    phi[j][i] = -1;
    rep.form = true;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            long long s = 0;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) s += phi[k][a] * cc.sym[k][l] * phi[l][b];
            if (s != cd.sym[a][b]) rep.form = false;
        }

    rep.swap = true;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (cc.C[a][b] != cc.C[a == i ? j : a == j ? i : a][b == i ? j : b == j ? i : b]) rep.swap = false;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> u(-5, 5), pos(0, 4);
    auto rand_lambda = [&](const QuiverMult& qq) {
        Lambda lam(qq.size());
        for (int k = 0; k < qq.size(); ++k) {
            lam[k].resize(qq.mult[k]);
            for (auto& x : lam[k]) x = Gauss(Rat(u(rng)), Rat(u(rng)));
        }
        return lam;
    };
    IntVec alpha(n, 0);
    alpha[i] = 1;
    alpha[j] = -1;
    const long long aa = form(cc.sym, alpha, alpha);

    rep.residues = rep.equivariance = true;
    for (int t = 0; t < trials; ++t) {
        Lambda lam = rand_lambda(q);
        IntVec v(n);
        for (auto& x : v) x = pos(rng);
        Lambda nl = normalize_lambda(nq, lam);
        std::vector<Gauss> r = residues(lam), nr = residues(nl);
        std::vector<Gauss> expect = r;
        expect[i] = r[i] + r[j];
        if (nr != expect) rep.residues = false;
        IntVec nv = normalize_dims(nq, v);
        Gauss vr, nvr;
        for (int k = 0; k < n; ++k) {
            vr += Gauss(v[k]) * r[k];
            nvr += Gauss(nv[k]) * nr[k];
        }
        if (vr != nvr) rep.residues = false;

        for (int k = 0; k < n; ++k) {
            if (k == i) {
                if (normalize_dims(nq, weyl_s(cd, i, v)) != swapped(nv, i, j)) rep.equivariance = false;
                if (normalize_lambda(nq, weyl_r(cd, i, lam)) != swapped(nl, i, j)) rep.equivariance = false;
            } else {
                if (normalize_dims(nq, weyl_s(cd, k, v)) != weyl_s(cc, k, nv)) rep.equivariance = false;
                if (normalize_lambda(nq, weyl_r(cd, k, lam)) != weyl_r(cc, k, nl)) rep.equivariance = false;
            }
        }
        // the swap is the reflection in alpha_i - alpha_j: (a, a)(sigma w - w) = -2 (a, w) a
        const long long aw = form(cc.sym, alpha, nv);
        IntVec sw = swapped(nv, i, j);
        for (int k = 0; k < n; ++k)
            if (aa * (sw[k] - nv[k]) != -2 * aw * alpha[k]) rep.equivariance = false;
    }
    return rep;
}

} // namespace qvm
