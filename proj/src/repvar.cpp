#include "qvm/repvar.hpp"

#include <functional>
#include <random>

namespace qvm {

std::vector<HatSlot> hat_layout(const QuiverMult& q, const IntVec& dims, int i) {
    std::vector<HalfArrow> in;
    for (const HalfArrow& h : half_arrows(q))
        if (h.in == i) in.push_back(h);
    std::sort(in.begin(), in.end(), [&](const HalfArrow& a, const HalfArrow& b) {
        if (a.out != b.out) return a.out < b.out;
        return q.arrows[a.arrow].id < q.arrows[b.arrow].id;
    });
    std::vector<HatSlot> slots;
    int off = 0;
    for (const HalfArrow& h : in) {
        int sz = static_cast<int>(dims[h.out]) * q.mult[h.out];
        slots.push_back({h, off, sz});
        off += sz;
    }
    return slots;
}

std::vector<PrincipalPart<Gauss>> moment_differential(const GRep& B, const GRep& delta) {
    auto mu = moment_map(make_jet_point(B, delta));
    std::vector<PrincipalPart<Gauss>> out;
    for (const auto& m : mu) {
        PrincipalPart<Gauss> t(m.n, m.d);
        for (int k = 0; k < m.d; ++k) t.c[k] = tangent_mat(m.c[k]);
        out.push_back(t);
    }
    return out;
}

namespace {

std::vector<Gauss> flatten(const std::vector<PrincipalPart<Gauss>>& parts) {
    std::vector<Gauss> v;
    for (const auto& p : parts)
        for (const auto& m : p.c)
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

// Entry slots of a point, forward matrices first.
struct EntryRef {
    bool back;
    int arrow, r, c;
};

std::vector<EntryRef> entries(const GRep& B, bool fwd, bool bwd) {
    std::vector<EntryRef> e;
    for (int pass = 0; pass < 2; ++pass) {
        if ((pass == 0 && !fwd) || (pass == 1 && !bwd)) continue;
        const auto& mats = pass == 0 ? B.fwd : B.bwd;
        for (size_t a = 0; a < mats.size(); ++a)
            for (int r = 0; r < mats[a].rows(); ++r)
                for (int c = 0; c < mats[a].cols(); ++c) e.push_back({pass == 1, static_cast<int>(a), r, c});
    }
    return e;
}

Gauss& entry(GRep& B, const EntryRef& e) { return (e.back ? B.bwd : B.fwd)[e.arrow](e.r, e.c); }

class Sampler {
public:
    Sampler(std::uint64_t seed, int box) : rng_(seed), dist_(-box, box) {}
    Gauss next() { return Gauss(dist_(rng_)); }
    GMat mat(int r, int c) {
        GMat m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m(i, j) = next();
        return m;
    }
    GMat invertible(int n) {
        for (;;) {
            GMat m = mat(n, n);
            if (is_invertible(m)) return m;
        }
    }
    TruncMatPoly<Gauss> group_element(int n, int d) {
        TruncMatPoly<Gauss> g(n, d);
        g.c[0] = invertible(n);
        for (int k = 1; k < d; ++k) g.c[k] = mat(n, n);
        return g;
    }

private:
    std::mt19937_64 rng_;
    std::uniform_int_distribution<int> dist_;
};

// Matrix of a linear map given by its values on unit entries.
GMat linear_map_matrix(GRep base, const std::vector<EntryRef>& unknowns,
                       const std::function<std::vector<Gauss>(const GRep&)>& f) {
    std::vector<std::vector<Gauss>> cols;
    for (const auto& e : unknowns) {
        Gauss saved = entry(base, e);
        entry(base, e) = Gauss(1);
        cols.push_back(f(base));
        entry(base, e) = saved;
    }
    const int rows = cols.empty() ? 0 : static_cast<int>(cols[0].size());
    GMat M(rows, static_cast<int>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c)
        for (int r = 0; r < rows; ++r) M(r, static_cast<int>(c)) = cols[c][r];
    return M;
}

} // namespace

bool is_stable(const GRep& B) {
    B.check_shapes();
    const int n = B.total_size();
    if (n == 0) return false;
    const QuiverMult& q = B.quiver;
    std::vector<int> off(q.size() + 1, 0);
    for (int i = 0; i < q.size(); ++i) off[i + 1] = off[i] + B.size_at(i);

    // generators as (row offset, col offset, block)
    struct Gen {
        int r0, c0;
        GMat m;
    };
    std::vector<Gen> gens;
    for (int i = 0; i < q.size(); ++i) {
        if (B.size_at(i) == 0) continue;
        gens.push_back({off[i], off[i], GMat::identity(B.size_at(i))});
        if (q.mult[i] > 1) gens.push_back({off[i], off[i], shift_matrix<Gauss>(static_cast<int>(B.dims[i]), q.mult[i])});
    }
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        const Arrow& ar = q.arrows[a];
        if (B.size_at(ar.in) == 0 || B.size_at(ar.out) == 0) continue;
        if (!B.fwd[a].is_zero()) gens.push_back({off[ar.in], off[ar.out], B.fwd[a]});
        if (!B.bwd[a].is_zero()) gens.push_back({off[ar.out], off[ar.in], B.bwd[a]});
    }

    // incremental basis of the spanned algebra, vectors reduced in insertion order
    std::vector<std::vector<Gauss>> basis;
    std::vector<int> piv;
    auto insert = [&](std::vector<Gauss> v) {
        for (size_t k = 0; k < basis.size(); ++k) {
            if (v[piv[k]].is_zero()) continue;
            Gauss f = v[piv[k]];
            for (size_t j = 0; j < v.size(); ++j)
                if (!basis[k][j].is_zero()) v[j] -= f * basis[k][j];
        }
        int p = -1;
        for (size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero()) {
                p = static_cast<int>(j);
                break;
            }
        if (p < 0) return false;
        Gauss inv = v[p].inv();
        for (auto& x : v) x *= inv;
        basis.push_back(std::move(v));
        piv.push_back(p);
        return true;
    };
    auto vec = [&](const GMat& m) {
        std::vector<Gauss> v(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) v[static_cast<size_t>(i) * n + j] = m(i, j);
        return v;
    };

    std::vector<GMat> todo{GMat::identity(n)};
    insert(vec(todo[0]));
    const size_t full = static_cast<size_t>(n) * n;
    while (!todo.empty() && basis.size() < full) {
        GMat M = std::move(todo.back());
        todo.pop_back();
        for (const Gen& g : gens) {
            GMat P(n, n);
            GMat rows = M.block(g.c0, 0, g.m.cols(), n);
            P.set_block(g.r0, 0, g.m * rows);
            if (insert(vec(P))) todo.push_back(std::move(P));
            if (basis.size() == full) break;
        }
    }
    return basis.size() == full;
}

std::optional<Gauge> isomorphic_points(const GRep& B, const GRep& B2) {
    B.check_shapes();
    B2.check_shapes();
    if (!(B.quiver == B2.quiver) || B.dims != B2.dims) return std::nullopt;
    const QuiverMult& q = B.quiver;

    // unknowns: entries of (g_i)_k
    struct Slot {
        int vertex, k, r, c;
    };
    std::vector<Slot> slots;
    for (int i = 0; i < q.size(); ++i)
        for (int k = 0; k < q.mult[i]; ++k)
            for (int r = 0; r < B.dims[i]; ++r)
                for (int c = 0; c < B.dims[i]; ++c) slots.push_back({i, k, r, c});
    if (slots.empty()) return Gauge{};

    auto residual = [&](const Gauge& g) {
        std::vector<GMat> G;
        for (int i = 0; i < q.size(); ++i) G.push_back(poly_to_matrix(g[i]));
        std::vector<Gauss> out;
        for (const HalfArrow& h : half_arrows(q)) {
            GMat r = G[h.in] * B.map(h) - B2.map(h) * G[h.out];
            for (int a = 0; a < r.rows(); ++a)
                for (int b = 0; b < r.cols(); ++b) out.push_back(r(a, b));
        }
        return out;
    };
    auto zero_gauge = [&]() {
        Gauge g;
        for (int i = 0; i < q.size(); ++i) g.emplace_back(static_cast<int>(B.dims[i]), q.mult[i]);
        return g;
    };
    std::vector<std::vector<Gauss>> cols;
    for (const Slot& s : slots) {
        Gauge g = zero_gauge();
        g[s.vertex].c[s.k](s.r, s.c) = Gauss(1);
        cols.push_back(residual(g));
    }
    GMat M(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c)
        for (size_t r = 0; r < cols[c].size(); ++r) M(static_cast<int>(r), static_cast<int>(c)) = cols[c][r];
    GMat K = kernel(M);
    if (K.cols() == 0) return std::nullopt;

    auto to_gauge = [&](const std::vector<Gauss>& x) {
        Gauge g = zero_gauge();
        for (size_t u = 0; u < slots.size(); ++u) g[slots[u].vertex].c[slots[u].k](slots[u].r, slots[u].c) = x[u];
        return g;
    };
    auto invertible = [&](const Gauge& g) {
        for (int i = 0; i < q.size(); ++i)
            if (B.dims[i] > 0 && !is_invertible(g[i].c[0])) return false;
        return true;
    };
    // a single generator for stable points; otherwise try a few fixed combinations
    std::vector<std::vector<Gauss>> tries;
    for (int c = 0; c < K.cols(); ++c) {
        std::vector<Gauss> x(slots.size());
        for (size_t u = 0; u < slots.size(); ++u) x[u] = K(static_cast<int>(u), c);
        tries.push_back(x);
    }
    for (long t = 1; t <= 3 && K.cols() > 1; ++t) {
        std::vector<Gauss> x(slots.size());
        long w = 1;
        for (int c = 0; c < K.cols(); ++c, w *= t + 1)
            for (size_t u = 0; u < slots.size(); ++u) x[u] += Gauss(w) * K(static_cast<int>(u), c);
        tries.push_back(x);
    }
    for (const auto& x : tries) {
        Gauge g = to_gauge(x);
        if (invertible(g)) return g;
    }
    return std::nullopt;
}

GRep reorient_point(const GRep& B, const QuiverMult& target) {
    const QuiverMult& q = B.quiver;
    if (q.names != target.names || q.mult != target.mult || q.arrows.size() != target.arrows.size())
        fail(ErrorKind::GraphMismatch, "quivers differ beyond orientation");
    GRep out = zero_point<Gauss>(target, B.dims);
    for (size_t a = 0; a < target.arrows.size(); ++a) {
        const Arrow& t = target.arrows[a];
        int src = q.arrow_index(t.id);
        const Arrow& s = q.arrows[src];
        if (s.out == t.out && s.in == t.in) {
            out.fwd[a] = B.fwd[src];
            out.bwd[a] = B.bwd[src];
        } else if (s.out == t.in && s.in == t.out) {
            // negate the map running towards the larger vertex index, so reversal is an involution
            out.fwd[a] = t.out < t.in ? -B.bwd[src] : B.bwd[src];
            out.bwd[a] = t.out < t.in ? B.fwd[src] : -B.fwd[src];
        } else {
            fail(ErrorKind::GraphMismatch, "arrow '" + t.id + "' changes its endpoints");
        }
    }
    return out;
}

SampledPoint sample_point(const QuiverMult& q, const IntVec& dims, int i, const std::vector<Gauss>& lam_i,
                          std::uint64_t seed, SampleOptions opt) {
    Sampler rnd(seed, opt.box);
    GRep B = zero_point<Gauss>(q, dims);
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        B.fwd[a] = rnd.mat(B.fwd[a].rows(), B.fwd[a].cols());
        B.bwd[a] = rnd.mat(B.bwd[a].rows(), B.bwd[a].cols());
    }
    const int d = q.mult[i], v = static_cast<int>(dims[i]);
    auto slots = hat_layout(q, dims, i);
    const int nhat = hat_size(slots);
    auto p = build_pole_pair<Gauss>(d, v, nhat, lam_i);
    if (nhat > 0) p = twist_pair(rnd.group_element(nhat, d), p, v, d);
    if (v > 0) {
        auto g = rnd.group_element(v, d);
        GMat G = poly_to_matrix(g), Ginv = poly_to_matrix(trunc_inv(g));
        p.to = G * p.to;
        p.from = p.from * Ginv;
    }
    scatter_pair(B, i, p);

    SampledPoint s{B, zero_lambda(q), std::vector<char>(q.size(), 0)};
    auto mu = moment_map(B);
    for (int j = 0; j < q.size(); ++j) {
        bool scalar = true;
        std::vector<Gauss> lam(q.mult[j]);
        for (int k = 1; k <= q.mult[j] && scalar; ++k) {
            const GMat& m = mu[j].coeff(k);
            Gauss c = m.rows() ? m(0, 0) : Gauss(0);
            scalar = m == GMat::identity(m.rows(), c);
            lam[k - 1] = -c;
        }
        if (scalar) s.lam[j] = lam;
        s.scalar[j] = scalar;
    }
    return s;
}

std::optional<GRep> sample_level_point(const QuiverMult& q, const IntVec& dims, const Lambda& lam, std::uint64_t seed,
                                       SampleOptions opt) {
    Sampler rnd(seed, opt.box);
    GRep B = zero_point<Gauss>(q, dims);
    for (size_t a = 0; a < q.arrows.size(); ++a) B.fwd[a] = rnd.mat(B.fwd[a].rows(), B.fwd[a].cols());
    auto unknowns = entries(B, false, true);
    // the moment is linear in the backward matrices once the forward ones are fixed
    GMat M = linear_map_matrix(B, unknowns, [](const GRep& P) { return flatten(moment_map(P)); });
    std::vector<PrincipalPart<Gauss>> target;
    for (int j = 0; j < q.size(); ++j) target.push_back(minus_scalar<Gauss>(lam[j], static_cast<int>(dims[j])));
    auto t = flatten(target);
    GMat rhs(static_cast<int>(t.size()), 1);
    for (size_t r = 0; r < t.size(); ++r) rhs(static_cast<int>(r), 0) = t[r];
    auto x = solve(M, rhs);
    if (!x) return std::nullopt;
    GMat K = kernel(M);
    GMat sol = *x;
    for (int c = 0; c < K.cols(); ++c) {
        Gauss r = rnd.next();
        for (int u = 0; u < sol.rows(); ++u) sol(u, 0) += r * K(u, c);
    }
    for (size_t u = 0; u < unknowns.size(); ++u) entry(B, unknowns[u]) = sol(static_cast<int>(u), 0);
    return B;
}

std::vector<GRep> level_tangents(const GRep& B, int count, std::uint64_t seed, SampleOptions opt) {
    Sampler rnd(seed, opt.box);
    auto unknowns = entries(B, true, true);
    GRep zero = zero_point<Gauss>(B.quiver, B.dims);
    GMat M = linear_map_matrix(zero, unknowns, [&](const GRep& delta) { return flatten(moment_differential(B, delta)); });
    GMat K = kernel(M);
    std::vector<GRep> out;
    for (int t = 0; t < count; ++t) {
        GRep d = zero;
        for (int c = 0; c < K.cols(); ++c) {
            Gauss r = rnd.next();
            if (r.is_zero()) continue;
            for (size_t u = 0; u < unknowns.size(); ++u) entry(d, unknowns[u]) += r * K(static_cast<int>(u), c);
        }
        out.push_back(d);
    }
    return out;
}

GRep gauge_direction(const Gauge& xi, const GRep& B) {
    std::vector<GMat> X;
    for (int i = 0; i < B.quiver.size(); ++i) X.push_back(poly_to_matrix(xi[i]));
    GRep out = B;
    for (size_t a = 0; a < B.quiver.arrows.size(); ++a) {
        const Arrow& ar = B.quiver.arrows[a];
        out.fwd[a] = X[ar.in] * B.fwd[a] - B.fwd[a] * X[ar.out];
        out.bwd[a] = X[ar.out] * B.bwd[a] - B.bwd[a] * X[ar.in];
    }
    return out;
}

} // namespace qvm
