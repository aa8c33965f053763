#include <doctest.h>

#include <set>

#include "qvm/catalog.hpp"
#include "qvm/normalization.hpp"

using namespace qvm;

namespace {

const PainleveRow& row(const PainleveReport& r, const std::vector<int>& legs) {
    for (const auto& x : r.rows)
        if (x.legs == legs) return x;
    FAIL("missing row");
    return r.rows.front();
}

// Order of the Weyl group of a finite-type Cartan matrix, by closing the simple reflections
// (acting on the root lattice) under products.
size_t weyl_order(const IntMat& C) {
    const int n = static_cast<int>(C.size());
    using M = std::vector<long long>;
    auto mul = [n](const M& a, const M& b) {
        M c(n * n, 0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j) c[i * n + j] += a[i * n + k] * b[k * n + j];
        return c;
    };
    std::vector<M> gens;
    for (int i = 0; i < n; ++i) {
        // s_i(alpha_j) = alpha_j - c_ij alpha_i, as column j
        M s(n * n, 0);
        for (int j = 0; j < n; ++j) {
            s[j * n + j] += 1;
            s[i * n + j] -= C[i][j];
        }
        gens.push_back(s);
    }
    M id(n * n, 0);
    for (int i = 0; i < n; ++i) id[i * n + i] = 1;
    std::set<M> seen = {id};
    std::vector<M> frontier = {id};
    while (!frontier.empty()) {
        std::vector<M> next;
        for (const auto& g : frontier)
            for (const auto& s : gens) {
                M h = mul(s, g);
                if (seen.insert(h).second) next.push_back(h);
            }
        frontier = std::move(next);
        REQUIRE(seen.size() < 100000);
    }
    return seen.size();
}

} // namespace

TEST_CASE("painleve rows") {
    PainleveReport r = catalog_painleve();
    CHECK(r.rows.size() == 8);

    const auto& c21 = row(r, {2, 2});
    CHECK(c21.type == "C_2^{(1)}");
    CHECK(c21.expected == 2);
    CHECK(c21.chain.arrows() == "C_2^{(1)} -> D_3^{(2)}");

    const auto& g2 = row(r, {3});
    CHECK(g2.type == "G_2");
    CHECK(g2.expected == 0);
    CHECK(g2.chain.arrows() == "G_2 -> A_2");

    const auto& d41 = row(r, {1, 1, 1, 1});
    CHECK(d41.type == "D_4^{(1)}");
    CHECK(d41.chain.steps.empty());

    CHECK(row(r, {2, 1, 1}).chain.steps.at(0).weyl_decomposition() == "W(A_5^{(2)}) = W(A_3^{(1)}) x| Z/2");
    CHECK(row(r, {3, 1}).chain.steps.at(0).weyl_decomposition() == "W(D_4^{(3)}) = W(A_2^{(1)}) x| Z/2");
    CHECK(row(r, {4}).chain.steps.at(0).weyl_decomposition() == "W(A_2^{(2)}) = W(A_1^{(1)}) x| Z/2");
    for (const auto& x : r.rows) {
        CHECK(x.v.front() == 2);
        for (const auto& st : x.chain.steps) CHECK(st.weyl_checked);
    }
}

TEST_CASE("finite Weyl groups halve under normalization") {
    // |W(C_3)| = 48, |W(A_3)| = 24; |W(G_2)| = 12, |W(A_2)| = 6; |W(C_4)| = 384, |W(D_4)| = 192
    for (const auto& q : {star_quiver({2, 1}), star_quiver({3}), chain_quiver({2, 1, 1, 1})}) {
        NormalizationChain ch = normalization_chain(q);
        REQUIRE(ch.steps.size() == 1);
        int pole = -1;
        for (int i = 0; i < q.size(); ++i)
            if (pole_vertex_info(q, i).is_irregular) pole = i;
        size_t big = weyl_order(cartan_data(q).C), small = weyl_order(cartan_data(normalize_quiver(q, pole).q).C);
        CHECK(big == 2 * small);
    }
    CHECK(weyl_order(cartan_data(star_quiver({3})).C) == 12);
    CHECK(weyl_order(cartan_data(chain_quiver({2, 1, 1, 1})).C) == 384);
}

TEST_CASE("chains end when no irregular pole is left") {
    NormalizationChain ch = normalization_chain(chain_quiver({2, 1, 1, 1, 2}));
    REQUIRE(ch.steps.size() == 2);
    CHECK(ch.steps[0].to == "A_7^{(2)}");
    CHECK(ch.steps[1].to == "D_4^{(1)}");
    CHECK(normalization_chain(chain_quiver({1, 1, 1})).arrows() == "A_3");
    CHECK_THROWS_AS(painleve_tuples(1), Error);
}
