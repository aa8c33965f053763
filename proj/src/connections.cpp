#include "qvm/connections.hpp"

namespace qvm {

void MeromorphicSystem::validate() const {
    require_shape(n >= 0, "negative rank");
    require_shape(parts.size() == poles.size(), "one principal part per pole");
    for (size_t i = 0; i < poles.size(); ++i) {
        for (size_t j = 0; j < i; ++j)
            if (poles[i] == poles[j]) fail(ErrorKind::ShapeMismatch, "poles must be distinct");
        require_shape(parts[i].n == n && parts[i].d >= 1, "pole part shape");
        for (const GMat& m : parts[i].c) require_shape(m.rows() == n && m.cols() == n, "coefficient shape");
    }
}

GMat MeromorphicSystem::residue_sum() const {
    GMat s(n, n);
    for (const auto& p : parts) s += p.residue();
    return s;
}

namespace {

std::vector<Gauss> flatten(const GMat& m) {
    std::vector<Gauss> out;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
    return out;
}

GMat power(const GMat& N, int k) {
    GMat out = GMat::identity(N.rows());
    for (int i = 0; i < k; ++i) out = out * N;
    return out;
}

// Unknown matrix f (r x c), linear equations added as rows of a coefficient matrix with a right-hand side.
struct LinearSystem {
    int r, c;
    std::vector<std::vector<Gauss>> rows;
    std::vector<Gauss> rhs;

    LinearSystem(int r_, int c_) : r(r_), c(c_) {}
    int var(int a, int b) const { return a * c + b; }
    // equations L f R = S for each entry; L is p x r, R is c x q
    void add_sandwich(const GMat& L, const GMat& R, const GMat& S, const Gauss& sign = Gauss(1)) {
        for (int a = 0; a < L.rows(); ++a)
            for (int b = 0; b < R.cols(); ++b) {
                std::vector<Gauss> row(static_cast<size_t>(r * c));
                for (int x = 0; x < r; ++x)
                    for (int y = 0; y < c; ++y) row[var(x, y)] = L(a, x) * R(y, b) * sign;
                rows.push_back(std::move(row));
                rhs.push_back(S(a, b));
            }
    }
    // adds L1 f R1 - L2 f R2 = 0 entrywise
    void add_commutation(const GMat& L1, const GMat& R1, const GMat& L2, const GMat& R2) {
        for (int a = 0; a < L1.rows(); ++a)
            for (int b = 0; b < R1.cols(); ++b) {
                std::vector<Gauss> row(static_cast<size_t>(r * c));
                for (int x = 0; x < r; ++x)
                    for (int y = 0; y < c; ++y) row[var(x, y)] = L1(a, x) * R1(y, b) - L2(a, x) * R2(y, b);
                rows.push_back(std::move(row));
                rhs.push_back(Gauss(0));
            }
    }
    GMat matrix() const {
        GMat M(static_cast<int>(rows.size()), r * c);
        for (size_t i = 0; i < rows.size(); ++i)
            for (int j = 0; j < r * c; ++j) M(static_cast<int>(i), j) = rows[i][j];
        return M;
    }
    GMat unvec(const GMat& x, int col) const {
        GMat f(r, c);
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < c; ++b) f(a, b) = x(var(a, b), col);
        return f;
    }
};

} // namespace

bool is_irreducible_system(const MeromorphicSystem& A) {
    A.validate();
    const int n = A.n;
    if (n == 0) return false;
    std::vector<GMat> gens;
    for (const auto& p : A.parts)
        for (const GMat& m : p.c)
            if (!m.is_zero()) gens.push_back(m);
    // grow a basis of the generated algebra, starting from the identity
    std::vector<GMat> basis;
    GMat rowspace(0, n * n);
    auto try_add = [&](const GMat& m) {
        GMat row(1, n * n);
        auto f = flatten(m);
        for (int k = 0; k < n * n; ++k) row(0, k) = f[k];
        GMat cand = vstack<Gauss>({rowspace, row}, n * n);
        if (rank(cand) == static_cast<int>(basis.size()) + 1) {
            rowspace = cand;
            basis.push_back(m);
            return true;
        }
        return false;
    };
    try_add(GMat::identity(n));
    for (size_t k = 0; k < basis.size() && static_cast<int>(basis.size()) < n * n; ++k)
        for (const GMat& g : gens) try_add(g * basis[k]);
    return static_cast<int>(basis.size()) == n * n;
}

std::optional<GMat> conjugating_matrix(const MeromorphicSystem& A, const MeromorphicSystem& A2) {
    A.validate();
    A2.validate();
    if (A.n != A2.n || A.poles != A2.poles) return std::nullopt;
    const int n = A.n;
    if (n == 0) return GMat(0, 0);
    LinearSystem ls(n, n);
    const GMat I = GMat::identity(n);
    for (int i = 0; i < A.size(); ++i) {
        if (A.order(i) != A2.order(i)) return std::nullopt;
        for (int k = 1; k <= A.order(i); ++k) ls.add_commutation(I, A.parts[i].coeff(k), A2.parts[i].coeff(k), I);
    }
    GMat K = ls.rows.empty() ? GMat::identity(n * n) : kernel(ls.matrix());
    // Schur: a single generator for irreducible systems, otherwise a few fixed combinations
    for (int c = 0; c < K.cols(); ++c) {
        GMat f = ls.unvec(K, c);
        if (is_invertible(f)) return f;
    }
    for (long t = 1; t <= 3 && K.cols() > 1; ++t) {
        GMat f(n, n);
        long w = 1;
        for (int c = 0; c < K.cols(); ++c, w *= t + 1) f += ls.unvec(K, c) * Gauss(w);
        if (is_invertible(f)) return f;
    }
    return std::nullopt;
}

MeromorphicSystem scalar_shift_system(const MeromorphicSystem& A, int i, const std::vector<Gauss>& lam) {
    A.validate();
    require_shape(i >= 0 && i < A.size(), "pole index out of range");
    require_shape(static_cast<int>(lam.size()) <= A.order(i), "shift has a higher order than the pole");
    MeromorphicSystem out = A;
    for (size_t k = 0; k < lam.size(); ++k) out.parts[i].c[k] -= GMat::identity(A.n, lam[k]);
    return out;
}

int Realization::offset(int i) const {
    int off = 0;
    for (int k = 0; k < i; ++k) off += block[k];
    return off;
}

GMat Realization::nilpotent(int i) const {
    const int off = offset(i);
    return T.block(off, off, block[i], block[i]) - GMat::identity(block[i], poles[i]);
}

GMat Realization::x_block(int i) const { return X.block(0, offset(i), X.rows(), block[i]); }
GMat Realization::y_block(int i) const { return Y.block(offset(i), 0, block[i], Y.cols()); }

RealizationCheck check_realization(const MeromorphicSystem& A, const Realization& R) {
    A.validate();
    RealizationCheck rep;
    int w = 0;
    for (int b : R.block) w += b;
    if (R.poles != A.poles || R.block.size() != A.poles.size() || R.T.rows() != w || R.T.cols() != w ||
        R.X.rows() != A.n || R.X.cols() != w || R.Y.rows() != w || R.Y.cols() != A.n)
        return rep;
    rep.shape = true;
    for (int i = 0; i < A.size(); ++i) {
        const int oi = R.offset(i);
        for (int j = 0; j < A.size(); ++j)
            if (i != j && !R.T.block(oi, R.offset(j), R.block[i], R.block[j]).is_zero()) rep.shape = false;
        if (!power(R.nilpotent(i), R.block[i]).is_zero()) rep.shape = false;
    }
    if (!rep.shape) return rep;
    rep.identity = rep.kernel = rep.range = true;
    for (int i = 0; i < A.size(); ++i) {
        const int sz = R.block[i];
        GMat N = R.nilpotent(i), Xi = R.x_block(i), Yi = R.y_block(i);
        GMat Nk = GMat::identity(sz);
        for (int m = 1; m <= std::max(A.order(i), sz); ++m) {
            GMat expect = m <= A.order(i) ? A.parts[i].coeff(m) : GMat(A.n, A.n);
            if (Xi * Nk * Yi != expect) rep.identity = false;
            Nk = Nk * N;
        }
        if (rank(vstack<Gauss>({Xi, N}, sz)) != sz) rep.kernel = false;
        if (rank(hstack<Gauss>({Yi, N}, sz)) != sz) rep.range = false;
    }
    return rep;
}

MeromorphicSystem realization_system(const Realization& R, int n, const std::vector<int>& orders) {
    require_shape(orders.size() == R.poles.size() && R.block.size() == R.poles.size(), "one order per pole");
    MeromorphicSystem out;
    out.n = n;
    out.poles = R.poles;
    for (size_t i = 0; i < R.poles.size(); ++i) {
        const int sz = R.block[i], k = orders[i];
        GMat N = R.nilpotent(static_cast<int>(i)), Xi = R.x_block(static_cast<int>(i)), Yi = R.y_block(static_cast<int>(i));
        PrincipalPart<Gauss> p(n, k);
        GMat Nk = GMat::identity(sz);
        for (int m = 1; m <= std::max(k, sz); ++m) {
            GMat c = Xi * Nk * Yi;
            if (m <= k)
                p.coeff(m) = c;
            else if (!c.is_zero())
                fail(ErrorKind::ShapeMismatch, "realization has a higher pole order than requested");
            Nk = Nk * N;
        }
        out.parts.push_back(std::move(p));
    }
    return out;
}

Realization companion_realization(const MeromorphicSystem& A) {
    A.validate();
    if (A.n == 0) fail(ErrorKind::EmptySpace, "system of rank zero");
    const int n = A.n;
    Realization R;
    R.poles = A.poles;
    std::vector<GMat> Ts, Xs, Ys;
    for (int i = 0; i < A.size(); ++i) {
        const int k = A.order(i);
        R.block.push_back(n * k);
        GMat N = shift_matrix<Gauss>(n, k);
        Ts.push_back(GMat::identity(n * k, A.poles[i]) + N);
        // X reads slot 0 and N moves slot m to slot m - 1, so slot m - 1 of Y holds A_{i,m}
        GMat Xi(n, n * k), Yi(n * k, n);
        Xi.set_block(0, 0, GMat::identity(n));
        for (int m = 1; m <= k; ++m) Yi.set_block((m - 1) * n, 0, A.parts[i].coeff(m));
        Xs.push_back(Xi);
        Ys.push_back(Yi);
    }
    R.T = block_diag(Ts);
    R.X = hstack(Xs, n);
    R.Y = vstack(Ys, n);
    return R;
}

Realization minimal_realization(const MeromorphicSystem& A) {
    Realization C = companion_realization(A);
    const int n = A.n;
    Realization R;
    R.poles = A.poles;
    std::vector<GMat> Ts, Xs, Ys;
    for (int i = 0; i < A.size(); ++i) {
        const int sz = C.block[i];
        GMat N = C.nilpotent(i), X = C.x_block(i), Y = C.y_block(i);
        // restrict to the span of N^m range(Y)
        std::vector<GMat> kry;
        GMat cur = Y;
        for (int m = 0; m < sz; ++m) {
            kry.push_back(cur);
            cur = N * cur;
        }
        GMat S = image_basis(hstack(kry, sz));
        const int s = S.cols();
        GMat Ns = *solve(S, N * S), Xs1 = X * S, Ys1 = *solve(S, Y);
        // then quotient by the joint kernel of X N^m
        std::vector<GMat> obs;
        cur = Xs1;
        for (int m = 0; m < s; ++m) {
            obs.push_back(cur);
            cur = cur * Ns;
        }
        GMat Q = s == 0 ? GMat(0, 0) : image_basis(vstack(obs, s).transpose()).transpose();
        const int r = Q.rows();
        GMat Nq = r == 0 ? GMat(0, 0) : *left_solve(Q * Ns, Q);
        GMat Xq = r == 0 ? GMat(n, 0) : *left_solve(Xs1, Q);
        GMat Yq = r == 0 ? GMat(0, n) : Q * Ys1;
        R.block.push_back(r);
        Ts.push_back(GMat::identity(r, A.poles[i]) + Nq);
        Xs.push_back(Xq);
        Ys.push_back(Yq);
    }
    R.T = block_diag(Ts);
    R.X = hstack(Xs, n);
    R.Y = vstack(Ys, n);
    return R;
}

namespace {

// T splits into the blocks of pairwise distinct poles
bool block_diagonal(const Realization& R) {
    for (size_t i = 0; i < R.poles.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (R.poles[i] == R.poles[j]) return false;
    for (int i = 0; i < static_cast<int>(R.block.size()); ++i) {
        const int off = R.offset(i);
        for (int r = off; r < off + R.block[i]; ++r)
            for (int c = 0; c < R.dim(); ++c)
                if ((c < off || c >= off + R.block[i]) && !R.T(r, c).is_zero()) return false;
    }
    return true;
}

std::optional<GMat> solve_intertwiner(const GMat& T, const GMat& T2, const GMat& X, const GMat& X2, const GMat& Y,
                                      const GMat& Y2) {
    const int w = T.rows();
    LinearSystem ls(w, w);
    ls.add_commutation(GMat::identity(w), T, T2, GMat::identity(w));
    ls.add_sandwich(X2, GMat::identity(w), X);
    ls.add_sandwich(GMat::identity(w), Y, Y2);
    GMat M = ls.matrix(), rhs(static_cast<int>(ls.rhs.size()), 1);
    for (size_t k = 0; k < ls.rhs.size(); ++k) rhs(static_cast<int>(k), 0) = ls.rhs[k];
    auto x = solve(M, rhs);
    if (!x) return std::nullopt;
    return ls.unvec(*x, 0);
}

} // namespace

std::optional<GMat> intertwine_realizations(const Realization& R, const Realization& R2) {
    if (R.poles != R2.poles || R.dim() != R2.dim() || R.X.rows() != R2.X.rows()) return std::nullopt;
    const int w = R.dim();
    if (w == 0) return GMat(0, 0);
    std::optional<GMat> f;
    if (R.block == R2.block && block_diagonal(R) && block_diagonal(R2)) {
        // distinct poles: f commutes with T, so it is block diagonal and each block is solved alone
        std::vector<GMat> parts;
        for (int i = 0; i < static_cast<int>(R.block.size()); ++i) {
            const int off = R.offset(i), b = R.block[i];
            auto fi = solve_intertwiner(R.T.block(off, off, b, b), R2.T.block(off, off, b, b), R.x_block(i), R2.x_block(i),
                                        R.y_block(i), R2.y_block(i));
            if (!fi) return std::nullopt;
            parts.push_back(*fi);
        }
        f = block_diag(parts);
    } else {
        f = solve_intertwiner(R.T, R2.T, R.X, R2.X, R.Y, R2.Y);
    }
    if (!f || !is_invertible(*f)) return std::nullopt;
    return f;
}

MeromorphicSystem middle_convolution_of(const Realization& R, const std::vector<int>& orders, const Gauss& zeta) {
    const int w = R.dim();
    RankFactor<Gauss> f = full_rank_factor(R.Y * R.X + GMat::identity(w, zeta));
    Realization out = R;
    out.X = f.Q;
    out.Y = f.P;
    return realization_system(out, f.r, orders);
}

MeromorphicSystem middle_convolution(const MeromorphicSystem& A, const Gauss& zeta) {
    std::vector<int> orders;
    for (int i = 0; i < A.size(); ++i) orders.push_back(A.order(i));
    return middle_convolution_of(minimal_realization(A), orders, zeta);
}

void require_star(const QuiverMult& q) {
    if (q.size() < 1 || q.mult[0] != 1) fail(ErrorKind::GraphMismatch, "a star needs a centre 0 of multiplicity one");
    std::vector<int> legs(q.size(), 0);
    for (const Arrow& a : q.arrows) {
        if (a.out != 0 && a.in != 0) fail(ErrorKind::GraphMismatch, "arrow '" + a.id + "' misses the centre");
        ++legs[a.out == 0 ? a.in : a.out];
    }
    for (int k = 1; k < q.size(); ++k)
        if (legs[k] != 1) fail(ErrorKind::GraphMismatch, "leg " + q.names[k] + " needs exactly one arrow");
}

MeromorphicSystem phi_rep_to_system(const GRep& B, const std::vector<Gauss>& poles) {
    B.check_shapes();
    require_star(B.quiver);
    require_shape(static_cast<int>(poles.size()) == B.quiver.size() - 1, "one pole per leg");
    MeromorphicSystem A;
    A.n = static_cast<int>(B.dims[0]);
    A.poles = poles;
    for (int k = 1; k < B.quiver.size(); ++k)
        A.parts.push_back(pole_phi(gather_pair(B, k), static_cast<int>(B.dims[k]), B.quiver.mult[k]));
    A.validate();
    return A;
}

Realization star_realization(const GRep& B, const std::vector<Gauss>& poles) {
    B.check_shapes();
    require_star(B.quiver);
    require_shape(static_cast<int>(poles.size()) == B.quiver.size() - 1, "one pole per leg");
    // the slots of V-hat_0 come in leg order
    PolePair<Gauss> p = gather_pair(B, 0);
    Realization R;
    R.poles = poles;
    std::vector<GMat> Ts;
    for (int k = 1; k < B.quiver.size(); ++k) {
        const int v = static_cast<int>(B.dims[k]), d = B.quiver.mult[k];
        R.block.push_back(v * d);
        Ts.push_back(GMat::identity(v * d, poles[k - 1]) + shift_matrix<Gauss>(v, d));
    }
    R.T = block_diag(Ts);
    R.X = p.to;
    R.Y = p.from;
    return R;
}

std::vector<Gauss> SplitType::difference() const {
    require_shape(xi.size() == eta.size(), "xi and eta need a common order");
    std::vector<Gauss> lam;
    for (size_t k = 0; k < xi.size(); ++k) lam.push_back(xi[k] - eta[k]);
    while (!lam.empty() && lam.back().is_zero()) lam.pop_back();
    if (lam.empty()) fail(ErrorKind::OrbitAssertionFailed, "xi and eta coincide");
    return lam;
}

StarPoint system_to_rep(const MeromorphicSystem& A, const std::vector<SplitType>& types) {
    A.validate();
    require_shape(types.size() == A.poles.size(), "one formal type per pole");
    const int n = A.n;
    std::vector<int> legs;
    std::vector<std::vector<Gauss>> lams;
    for (int k = 0; k < A.size(); ++k) {
        require_shape(static_cast<int>(types[k].xi.size()) == A.order(k), "formal type order differs from the pole order");
        lams.push_back(types[k].difference());
        legs.push_back(static_cast<int>(lams.back().size()));
        if (types[k].dim < 0 || types[k].dim > n)
            fail(ErrorKind::OrbitAssertionFailed, "block size of pole " + std::to_string(k + 1) + " is out of range");
    }
    StarPoint out;
    QuiverMult q = star_quiver(legs);
    out.v = IntVec{n};
    Gauss zeta;
    for (const auto& t : types) {
        out.v.push_back(t.dim);
        zeta += t.eta[0];
    }
    out.lam.push_back({zeta});
    for (const auto& l : lams) out.lam.push_back(l);
    out.B = zero_point<Gauss>(q, out.v);

    for (int k = 0; k < A.size(); ++k) {
        const int d = legs[k], v = types[k].dim;
        const std::string where = "pole " + std::to_string(k + 1);
        PrincipalPart<Gauss> shifted = A.parts[k] - scalar_part<Gauss>(types[k].eta, n);
        for (int m = d + 1; m <= shifted.d; ++m)
            if (!shifted.coeff(m).is_zero()) fail(ErrorKind::OrbitAssertionFailed, where + " has a higher order than its type");
        shifted = with_order(shifted, d);
        PolePair<Gauss> p;
        if (v == 0) {
            if (!shifted.is_zero()) fail(ErrorKind::OrbitAssertionFailed, where + " should be scalar");
            p = {GMat(0, n), GMat(n, 0)};
        } else {
            SplitResult<Gauss> s = spectral_split(shifted, lams[k].back());
            if (s.p != v || s.normal != split_diag<Gauss>(lams[k], v, n))
                fail(ErrorKind::OrbitAssertionFailed, where + " is not of the prescribed formal type");
            p = twist_pair(trunc_inv(s.g), build_pole_pair<Gauss>(d, v, n, lams[k]), v, d);
        }
        scatter_pair(out.B, k + 1, p);
    }
    if (!check_level(out.B, out.lam)) fail(ErrorKind::OrbitAssertionFailed, "residues do not sum to the prescribed scalar");
    return out;
}

MeromorphicSystem double_pole_example(const Gauss& l12, const Gauss& l11, const Gauss& l22, const Gauss& l21,
                                      const Gauss& zeta, const std::vector<Gauss>& poles) {
    if (l12.is_zero() || l22.is_zero()) fail(ErrorKind::TopCoefficientZero, "top coefficients must be nonzero");
    if (l11 + l21 != Gauss(-2) * zeta) fail(ErrorKind::TraceConditionViolated, "need lam11 + lam21 = -2 zeta");
    require_shape(poles.size() == 2, "two poles");
    MeromorphicSystem A;
    A.n = 2;
    A.poles = poles;
    PrincipalPart<Gauss> a1(2, 2), a2(2, 2);
    a1.coeff(2) = GMat(2, 2);
    a1.coeff(2)(0, 0) = Gauss(2) * l12;
    a1.coeff(2)(0, 1) = Gauss(-2) * l12;
    a1.coeff(2)(1, 0) = l12;
    a1.coeff(2)(1, 1) = -l12;
    a1.coeff(1)(0, 0) = l11 + zeta;
    a1.coeff(1)(0, 1) = -(l11 + zeta);
    a1.coeff(1)(1, 0) = zeta;
    a1.coeff(1)(1, 1) = -zeta;
    a2.coeff(2)(0, 0) = l22;
    a2.coeff(1)(0, 0) = l21;
    a2.coeff(1)(0, 1) = l11 + zeta;
    a2.coeff(1)(1, 0) = -zeta;
    A.parts = {a1, a2};
    A.validate();
    return A;
}

} // namespace qvm
