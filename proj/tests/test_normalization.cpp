#include <doctest.h>

#include "helpers.hpp"
#include "qvm/normalization.hpp"

using namespace qvm;
using namespace testutil;

namespace {

std::vector<int> irregular_poles(const QuiverMult& q) {
    std::vector<int> out;
    for (int i = 0; i < q.size(); ++i)
        if (pole_vertex_info(q, i).is_irregular) out.push_back(i);
    return out;
}

int edges_between(const QuiverMult& q, int a, int b) {
    int n = 0;
    for (const Arrow& x : q.arrows)
        if ((x.out == a && x.in == b) || (x.out == b && x.in == a)) ++n;
    return n;
}

OrbitCoords<Gauss> random_coords(std::mt19937_64& rng, int d, int vi, int vj) {
    OrbitCoords<Gauss> c;
    for (int k = 0; k < d - 2; ++k) {
        c.a.push_back(random_mat(rng, vi, vj - vi, 2));
        c.b.push_back(random_mat(rng, vj - vi, vi, 2));
    }
    return c;
}

std::vector<Gauss> random_lam(std::mt19937_64& rng, int d) {
    std::vector<Gauss> lam(d);
    for (auto& x : lam) x = Gauss(static_cast<long>(rng() % 7) - 3);
    lam.back() = random_nonzero(rng);
    return lam;
}

} // namespace

TEST_CASE("pole vertices") {
    QuiverMult s = star_quiver({2, 1, 3});
    CHECK(pole_vertex_info(s, 1).is_irregular);
    CHECK(pole_vertex_info(s, 1).base == 0);
    CHECK_FALSE(pole_vertex_info(s, 2).is_irregular);
    CHECK(pole_vertex_info(s, 2).is_pole);
    CHECK_FALSE(pole_vertex_info(s, 0).is_pole);
    // the neighbour must have multiplicity one
    CHECK_FALSE(pole_vertex_info(chain_quiver({2, 2}), 0).is_pole);
    try {
        normalize_quiver(s, 2);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotIrregularPole);
    }
}

TEST_CASE("normalized quiver shapes") {
    // (d, 1): no copies, d - 2 parallel edges
    for (int d = 2; d <= 5; ++d) {
        NormalizedQuiver nq = normalize_quiver(chain_quiver({d, 1}), 0);
        CHECK(nq.q.mult == std::vector<int>{1, 1});
        CHECK(edges_between(nq.q, 0, 1) == d - 2);
        CHECK(nq.extra.size() == static_cast<size_t>(d - 2));
        for (int e : nq.extra) {
            CHECK(nq.q.arrows[e].out == 1);
            CHECK(nq.q.arrows[e].in == 0);
        }
    }
    // a chain 0 - 1 - 2 - 3 normalized at 0 becomes a triangle on 0, 1, 2 with 3 hanging off 2
    NormalizedQuiver nq = normalize_quiver(chain_quiver({3, 1, 1, 1}), 0);
    CHECK(edges_between(nq.q, 0, 1) == 1);
    CHECK(edges_between(nq.q, 0, 2) == 1);
    CHECK(edges_between(nq.q, 1, 2) == 1);
    CHECK(edges_between(nq.q, 2, 3) == 1);
    CHECK(nq.q.arrows.size() == 4);
    CHECK(nq.removed == 0);
    // copies keep the orientation relative to the base
    int c = nq.q.arrow_index("e2.0");
    CHECK(nq.q.arrows[c].out == 0);
    CHECK(nq.q.arrows[c].in == 2);
    CHECK(nq.copy[c]);
    CHECK(nq.source[c] == 1);

    QuiverMult s = star_quiver({2, 1, 1});
    NormalizedQuiver ns = normalize_quiver(s, 1);
    int c2 = ns.q.arrow_index("a2.1");
    CHECK(ns.q.arrows[c2].out == 2);
    CHECK(ns.q.arrows[c2].in == 1);
    CHECK(normalize_dims(ns, {2, 1, 1, 1}) == IntVec{1, 1, 1, 1});
}

TEST_CASE("normalization chains between Dynkin types") {
    auto type_after = [](const QuiverMult& q, int i) { return classify_dynkin_type(cartan_data(normalize_quiver(q, i).q).C); };
    auto type_of = [](const QuiverMult& q) { return classify_dynkin_type(cartan_data(q).C); };
    CHECK(type_of(chain_quiver({2, 1, 1, 1})) == "C_4");
    CHECK(type_after(chain_quiver({2, 1, 1, 1}), 0) == "D_4");
    CHECK(type_after(chain_quiver({2, 1, 1}), 0) == "A_3");
    CHECK(type_after(chain_quiver({3, 1}), 0) == "A_2");

    QuiverMult c41 = chain_quiver({2, 1, 1, 1, 2});
    CHECK(type_of(c41) == "C_4^{(1)}");
    NormalizedQuiver once = normalize_quiver(c41, 4);
    CHECK(classify_dynkin_type(cartan_data(once.q).C) == "A_7^{(2)}");
    CHECK(type_after(once.q, 0) == "D_4^{(1)}");

    QuiverMult c31 = chain_quiver({2, 1, 1, 2});
    NormalizedQuiver o31 = normalize_quiver(c31, 3);
    CHECK(classify_dynkin_type(cartan_data(o31.q).C) == "A_5^{(2)}");
    CHECK(type_after(o31.q, 0) == "A_3^{(1)}");

    CHECK(type_after(chain_quiver({4, 1}), 0) == "A_1^{(1)}");
    CHECK(type_after(chain_quiver({2, 1, 2}), 0) == "D_3^{(2)}");
    CHECK(type_after(chain_quiver({3, 1, 1}), 0) == "A_2^{(1)}");
    CHECK(type_of(chain_quiver({3, 1, 1})) == "D_4^{(3)}");

    CHECK(type_after(star_quiver({2, 1, 1}), 1) == "A_3^{(1)}");
    CHECK(type_after(star_quiver({3, 1}), 1) == "A_2^{(1)}");
    CHECK(type_after(star_quiver({2, 2}), 1) == "D_3^{(2)}");
    CHECK(type_after(star_quiver({4}), 1) == "A_1^{(1)}");
}

TEST_CASE("orbit coordinates by hand") {
    // d = 3, V_i = C, complement C: one pair (a, b)
    OrbitCoords<Gauss> c;
    c.a = {mat({{2}})};
    c.b = {mat({{5}})};
    std::vector<Gauss> lam = {Gauss(9), Gauss(-1), Gauss(3)};
    auto B = assemble_orbit_element(c, lam, 1, 2);
    CHECK(B.residue().is_zero());
    CHECK(B.coeff(3) == mat({{3, 0}, {0, 0}}));
    CHECK(B.coeff(2) == mat({{-1, -2}, {15, 0}}));
    CHECK(extract_orbit_coords(B, 1, lam) == c);
    CHECK(orbit_residue(c, 1, 2) == mat({{-10, 0}, {0, 10}}));

    // zero coordinates give the residue-free part of diag(lambda, 0)
    OrbitCoords<Gauss> z;
    z.a = {GMat(1, 2), GMat(1, 2)};
    z.b = {GMat(2, 1), GMat(2, 1)};
    std::vector<Gauss> l4 = {Gauss(1), Gauss(2), Gauss(3), Gauss(4)};
    PrincipalPart<Gauss> expect = split_diag<Gauss>(l4, 1, 3);
    expect.coeff(1) = GMat(3, 3);
    CHECK(assemble_orbit_element(z, l4, 1, 3) == expect);

    // off-orbit inputs are rejected
    PrincipalPart<Gauss> bad = B;
    bad.coeff(2)(1, 1) = Gauss(1);
    CHECK_THROWS_AS(extract_orbit_coords(bad, 1, lam), Error);
    bad = B;
    bad.coeff(1)(0, 0) = Gauss(1);
    CHECK_THROWS_AS(extract_orbit_coords(bad, 1, lam), Error);
}

TEST_CASE("orbit coordinates: roundtrip, equivariance, residue") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 60; ++t) {
        const int d = 2 + t % 4, vi = 1 + t % 2, vj = vi + 1 + t % 3;
        auto lam = random_lam(rng, d);
        auto c = random_coords(rng, d, vi, vj);
        auto B = assemble_orbit_element(c, lam, vi, vj);
        CHECK(extract_orbit_coords(B, vi, lam) == c);

        // block-diagonal constant conjugation acts by a' -> h a' k^-1, b' -> k b' h^-1
        GMat h, k;
        do h = random_mat(rng, vi, vi, 2);
        while (!is_invertible(h));
        do k = random_mat(rng, vj - vi, vj - vi, 2);
        while (!is_invertible(k));
        GMat g(vj, vj);
        g.set_block(0, 0, h);
        g.set_block(vi, vi, k);
        OrbitCoords<Gauss> c2;
        for (size_t m = 0; m < c.a.size(); ++m) {
            c2.a.push_back(h * c.a[m] * inverse(k));
            c2.b.push_back(k * c.b[m] * inverse(h));
        }
        CHECK(coadjoint_act(TruncMatPoly<Gauss>::constant(g, d), B) == assemble_orbit_element(c2, lam, vi, vj));

        // after splitting, the residue of the block-diagonal form is the moment of the coordinates
        PrincipalPart<Gauss> full = B;
        full.coeff(1) = split_diag<Gauss>(lam, vi, vj).coeff(1);
        auto s = spectral_split(full, lam.back());
        CHECK(s.p == vi);
        CHECK(s.normal.residue() == split_diag<Gauss>(lam, vi, vj).coeff(1) + orbit_residue(c, vi, vj));
    }
}

TEST_CASE("normalizing level points at irregular poles") {
    auto cases = level_cases(4, 57);
    REQUIRE(cases.size() >= 12);
    int done = 0;
    for (const auto& c : cases) {
        for (int i : irregular_poles(c.B.quiver)) {
            auto nb = normalize_point(c.B, c.lam, i);
            CHECK(nb.B.quiver == nb.nq.q);
            CHECK(nb.B.dims == normalize_dims(nb.nq, c.B.dims));
            CHECK(check_level(nb.B, nb.lam));
            CHECK(is_stable(nb.B) == is_stable(c.B));
            Gauss p1, p2;
            auto r1 = residues(c.lam), r2 = residues(nb.lam);
            for (int k = 0; k < c.B.quiver.size(); ++k) {
                p1 += Gauss(c.B.dims[k]) * r1[k];
                p2 += Gauss(nb.B.dims[k]) * r2[k];
            }
            CHECK(p1 == p2);

            auto back = denormalize_point(nb, c.lam[i]);
            CHECK(back.v == c.B.dims);
            CHECK(back.lam == c.lam);
            CHECK(isomorphic_points(c.B, back.B).has_value());

            std::vector<Gauss> wrong = c.lam[i];
            wrong[0] += Gauss(1);
            try {
                denormalize_point(nb, wrong);
                CHECK(false);
            } catch (const Error& e) {
                CHECK(e.kind() == ErrorKind::OrbitAssertionFailed);
            }
            ++done;
        }
    }
    CHECK(done >= 10);
}

TEST_CASE("normalization is gauge independent") {
    std::mt19937_64 rng(3);
    for (const auto& c : level_cases(1, 8)) {
        GRep B2 = gauge_act(random_gauge(rng, c.B.quiver, c.B.dims), c.B);
        for (int i : irregular_poles(c.B.quiver)) {
            auto n1 = normalize_point(c.B, c.lam, i);
            auto n2 = normalize_point(B2, c.lam, i);
            CHECK(isomorphic_points(n1.B, n2.B).has_value());
        }
    }
}

TEST_CASE("normalization preserves the symplectic form on level tangents") {
    int done = 0;
    for (const auto& c : level_cases(1, 19)) {
        auto tangents = level_tangents(c.B, 2, 7);
        REQUIRE(tangents.size() == 2);
        Lambda jl = c.lam;
        for (int i : irregular_poles(c.B.quiver)) {
            auto n1 = normalize_point(make_jet_point(c.B, tangents[0]), jl, i);
            auto n2 = normalize_point(make_jet_point(c.B, tangents[1]), jl, i);
            CHECK(value_point(n1.B) == value_point(n2.B));
            CHECK(symplectic_pair(tangent_point(n1.B), tangent_point(n2.B)) == symplectic_pair(tangents[0], tangents[1]));
            ++done;
        }
    }
    CHECK(done >= 3);
}

TEST_CASE("lattice map intertwines the Weyl actions") {
    std::vector<std::pair<QuiverMult, int>> cases = {
        {chain_quiver({4, 1}), 0},          {chain_quiver({2, 1, 1, 1, 2}), 4}, {chain_quiver({3, 1, 1}), 0},
        {star_quiver({2, 1, 1}), 1},         {star_quiver({3, 2, 1}), 2},        {star_quiver({4}), 1},
    };
    for (const auto& [q, i] : cases) {
        auto rep = phi_weyl_check(q, i, 40, 11);
        CHECK(rep.form);
        CHECK(rep.residues);
        CHECK(rep.swap);
        CHECK(rep.equivariance);
        CHECK(rep.all());
    }
}
