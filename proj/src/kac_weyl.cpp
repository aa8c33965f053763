#include "qvm/kac_weyl.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "qvm/linalg.hpp"

namespace qvm {

CartanData cartan_data(const QuiverMult& q) {
    q.validate();
    const int n = q.size();
    CartanData cd;
    cd.adj.assign(n, IntVec(n, 0));
    for (const Arrow& a : q.arrows) {
        cd.adj[a.out][a.in] += 1;
        cd.adj[a.in][a.out] += 1;
    }
    cd.d.assign(q.mult.begin(), q.mult.end());
    cd.C.assign(n, IntVec(n, 0));
    cd.sym.assign(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cd.C[i][j] = (i == j ? 2 : 0) - cd.adj[i][j] * cd.d[j];
            cd.sym[i][j] = cd.d[i] * cd.C[i][j];
        }
    return cd;
}

long long pair(const CartanData& cd, const IntVec& v, const IntVec& w) {
    require_shape(static_cast<int>(v.size()) == cd.size() && v.size() == w.size(), "pair: dimension vectors");
    long long s = 0;
    for (int i = 0; i < cd.size(); ++i)
        for (int j = 0; j < cd.size(); ++j) s += v[i] * w[j] * cd.sym[i][j];
    return s;
}

Gauss pair(const CartanData& cd, const IntVec& v, const std::vector<Gauss>& w) {
    require_shape(static_cast<int>(v.size()) == cd.size() && v.size() == w.size(), "pair: vectors");
    Gauss s;
    for (int i = 0; i < cd.size(); ++i)
        for (int j = 0; j < cd.size(); ++j)
            if (cd.sym[i][j] != 0 && v[i] != 0) s += w[j] * Gauss(v[i] * cd.sym[i][j]);
    return s;
}

IntVec weyl_s(const CartanData& cd, int i, IntVec v) {
    require_shape(static_cast<int>(v.size()) == cd.size(), "weyl_s: dimension vector");
    long long c = 0;
    for (int j = 0; j < cd.size(); ++j) c += cd.C[i][j] * v[j];
    v[i] -= c;
    return v;
}

Lambda weyl_r(const CartanData& cd, int i, const Lambda& lam) {
    require_shape(static_cast<int>(lam.size()) == cd.size(), "weyl_r: parameter");
    Lambda out = lam;
    for (auto& x : out[i]) x = -x;
    const Gauss res = lam[i].empty() ? Gauss(0) : lam[i][0];
    for (int j = 0; j < cd.size(); ++j) {
        if (j == i || cd.C[i][j] == 0) continue;
        require_shape(!out[j].empty(), "weyl_r: empty parameter");
        out[j][0] -= Gauss(cd.C[i][j]) * res;
    }
    return out;
}

WeylImage apply_weyl_word(const CartanData& cd, const std::vector<int>& word, IntVec v, Lambda lam) {
    for (int i : word) {
        require_shape(i >= 0 && i < cd.size(), "weyl word letter out of range");
        v = weyl_s(cd, i, v);
        lam = weyl_r(cd, i, lam);
    }
    bool nonneg = std::all_of(v.begin(), v.end(), [](long long x) { return x >= 0; });
    return {v, lam, nonneg};
}

std::optional<int> coxeter_order(const CartanData& cd, int i, int j) {
    if (i == j) return 1;
    switch (cd.C[i][j] * cd.C[j][i]) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: return std::nullopt;
    }
}

const char* root_kind_name(RootKind k) {
    switch (k) {
    case RootKind::Real: return "real";
    case RootKind::Imaginary: return "imaginary";
    case RootKind::NotRoot: return "not_root";
    }
    return "?";
}

bool connected_support(const CartanData& cd, const IntVec& v) {
    std::vector<int> supp;
    for (int i = 0; i < cd.size(); ++i)
        if (v[i] != 0) supp.push_back(i);
    if (supp.empty()) return false;
    std::vector<char> seen(cd.size(), 0);
    std::queue<int> todo;
    todo.push(supp[0]);
    seen[supp[0]] = 1;
    int count = 0;
    while (!todo.empty()) {
        int a = todo.front();
        todo.pop();
        ++count;
        for (int b = 0; b < cd.size(); ++b)
            if (!seen[b] && v[b] != 0 && cd.adj[a][b] > 0) {
                seen[b] = 1;
                todo.push(b);
            }
    }
    return count == static_cast<int>(supp.size());
}

RootKind classify_root(const CartanData& cd, const IntVec& start) {
    IntVec v = start;
    for (long long x : v)
        if (x < 0) return RootKind::NotRoot;
    if (std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; })) return RootKind::NotRoot;
    for (;;) {
        int nz = 0, last = -1;
        for (int i = 0; i < cd.size(); ++i)
            if (v[i] != 0) {
                ++nz;
                last = i;
            }
        if (nz == 1 && v[last] == 1) return RootKind::Real;
        int pick = -1;
        for (int i = 0; i < cd.size() && pick < 0; ++i) {
            long long c = 0;
            for (int j = 0; j < cd.size(); ++j) c += cd.C[i][j] * v[j];
            if (c > 0) pick = i;
        }
        if (pick < 0) return connected_support(cd, v) ? RootKind::Imaginary : RootKind::NotRoot;
        v = weyl_s(cd, pick, v);
        if (v[pick] < 0) return RootKind::NotRoot;
    }
}

long long expected_dim(const CartanData& cd, const IntVec& v) { return 2 - pair(cd, v, v); }

namespace {

IntMat blank(int n) {
    IntMat C(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) C[i][i] = 2;
    return C;
}

void link(IntMat& C, int i, int j, long long aij = -1, long long aji = -1) {
    C[i][j] = aij;
    C[j][i] = aji;
}

// n nodes, the first len of them joined in a path
IntMat path(int n, int len = -1) {
    IntMat C = blank(n);
    if (len < 0) len = n;
    for (int i = 0; i + 1 < len; ++i) link(C, i, i + 1);
    return C;
}

std::string lab(const char* fam, int rank, int twist = 0) {
    std::string s = std::string(fam) + "_" + std::to_string(rank);
    if (twist) s += "^{(" + std::to_string(twist) + ")}";
    return s;
}

} // namespace

std::vector<DynkinEntry> dynkin_catalog(int n) {
    std::vector<DynkinEntry> out;
    auto add = [&](std::string label, IntMat C, bool affine) { out.push_back({std::move(label), std::move(C), affine}); };
    if (n < 1) return out;

    // finite types, rank n
    add(lab("A", n), path(n), false);
    if (n >= 2) {
        IntMat C = path(n);
        link(C, n - 2, n - 1, -2, -1);
        add(lab("C", n), C, false);
    }
    if (n >= 3) {
        IntMat C = path(n);
        link(C, n - 2, n - 1, -1, -2);
        add(lab("B", n), C, false);
    }
    if (n >= 4) {
        IntMat C = path(n, n - 1);
        link(C, n - 3, n - 1);
        add(lab("D", n), C, false);
    }
    if (n >= 6 && n <= 8) {
        IntMat C = path(n, n - 1);
        link(C, 2, n - 1);
        add(lab("E", n), C, false);
    }
    if (n == 4) {
        IntMat C = path(4);
        link(C, 1, 2, -1, -2);
        add("F_4", C, false);
    }
    if (n == 2) {
        IntMat C = blank(2);
        link(C, 0, 1, -1, -3);
        add("G_2", C, false);
    }

    // affine types with n = l + 1 nodes
    const int l = n - 1;
    if (n == 2) {
        IntMat C = blank(2);
        link(C, 0, 1, -2, -2);
        add(lab("A", 1, 1), C, true);
        IntMat T = blank(2);
        link(T, 0, 1, -4, -1);
        add(lab("A", 2, 2), T, true);
    }
    if (n >= 3) {
        IntMat C = path(n);
        link(C, l, 0);
        add(lab("A", l, 1), C, true);

        IntMat Cc = path(n);
        link(Cc, 0, 1, -1, -2);
        link(Cc, l - 1, l, -2, -1);
        add(lab("C", l, 1), Cc, true);

        IntMat Dt = path(n);
        link(Dt, 0, 1, -2, -1);
        link(Dt, l - 1, l, -1, -2);
        add(lab("D", l + 1, 2), Dt, true);

        IntMat At = path(n);
        link(At, 0, 1, -2, -1);
        link(At, l - 1, l, -2, -1);
        add(lab("A", 2 * l, 2), At, true);
    }
    if (n == 3) {
        IntMat G = path(3);
        link(G, 1, 2, -1, -3);
        add(lab("G", 2, 1), G, true);
        IntMat D = path(3);
        link(D, 1, 2, -3, -1);
        add(lab("D", 4, 3), D, true);
    }
    if (n >= 4) {
        // fork 0,1 -> 2, then a path 2..l
        auto fork = [&]() {
            IntMat C = blank(n);
            link(C, 0, 2);
            for (int i = 1; i < l; ++i) link(C, i, i + 1);
            return C;
        };
        IntMat B = fork();
        link(B, l - 1, l, -1, -2);
        add(lab("B", l, 1), B, true);
        IntMat A = fork();
        link(A, l - 1, l, -2, -1);
        add(lab("A", 2 * l - 1, 2), A, true);
        if (n >= 5) {
            IntMat D = fork();
            link(D, l - 1, l, 0, 0);
            link(D, l - 2, l);
            add(lab("D", l, 1), D, true);
        }
    }
    if (n == 5) {
        IntMat F = path(5);
        link(F, 2, 3, -1, -2);
        add(lab("F", 4, 1), F, true);
        IntMat E = path(5);
        link(E, 2, 3, -2, -1);
        add(lab("E", 6, 2), E, true);
    }
    if (n == 7) {
        IntMat E = path(7, 5);
        link(E, 2, 5);
        link(E, 5, 6);
        add(lab("E", 6, 1), E, true);
    }
    if (n == 8) {
        IntMat E = path(8, 7);
        link(E, 3, 7);
        add(lab("E", 7, 1), E, true);
    }
    if (n == 9) {
        IntMat E = path(9, 8);
        link(E, 2, 8);
        add(lab("E", 8, 1), E, true);
    }
    return out;
}

namespace {

bool match_from(const IntMat& C, const IntMat& D, std::vector<int>& perm, std::vector<char>& used, int k) {
    const int n = static_cast<int>(C.size());
    if (k == n) return true;
    for (int u = 0; u < n; ++u) {
        if (used[u] || D[u][u] != C[k][k]) continue;
        bool ok = true;
        for (int m = 0; m < k && ok; ++m) ok = C[k][m] == D[u][perm[m]] && C[m][k] == D[perm[m]][u];
        if (!ok) continue;
        used[u] = 1;
        perm[k] = u;
        if (match_from(C, D, perm, used, k + 1)) return true;
        used[u] = 0;
    }
    return false;
}

IntVec row_signature(const IntVec& row) {
    IntVec s = row;
    std::sort(s.begin(), s.end());
    return s;
}

} // namespace

std::string classify_dynkin_type(const IntMat& C) {
    const int n = static_cast<int>(C.size());
    std::vector<IntVec> sig;
    for (const auto& r : C) sig.push_back(row_signature(r));
    std::sort(sig.begin(), sig.end());
    for (const DynkinEntry& e : dynkin_catalog(n)) {
        std::vector<IntVec> es;
        for (const auto& r : e.C) es.push_back(row_signature(r));
        std::sort(es.begin(), es.end());
        if (es != sig) continue;
        std::vector<int> perm(n, -1);
        std::vector<char> used(n, 0);
        if (match_from(C, e.C, perm, used, 0)) return e.label;
    }
    return "";
}

std::optional<IntVec> null_root(const IntMat& C) {
    const int n = static_cast<int>(C.size());
    GMat M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = Gauss(C[i][j]);
    GMat K = kernel(M);
    if (K.cols() != 1) return std::nullopt;
    mpz_class lcm = 1;
    for (int i = 0; i < n; ++i) {
        if (!K(i, 0).is_real()) return std::nullopt;
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), K(i, 0).re().get_den().get_mpz_t());
    }
    std::vector<mpz_class> z(n);
    mpz_class g = 0;
    for (int i = 0; i < n; ++i) {
        Rat x = K(i, 0).re() * Rat(lcm);
        z[i] = x.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
    }
    int sign = sgn(z[0]);
    IntVec out(n);
    for (int i = 0; i < n; ++i) {
        mpz_class v = z[i] / g;
        if (sgn(v) == 0 || sgn(v) != sign) return std::nullopt;
        out[i] = (sign > 0 ? v : mpz_class(-v)).get_si();
    }
    return out;
}

} // namespace qvm
