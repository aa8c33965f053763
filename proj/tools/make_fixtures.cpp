// Writes the JSON fixtures used by the CLI smoke tests into the given directory.
#include <iostream>

#include "qvm/io.hpp"

using namespace qvm;

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_fixtures DIR\n";
        return 2;
    }
    const std::string dir = argv[1];

    io::Bundle d4;
    d4.quiver = star_quiver({1, 1, 1, 1});
    d4.dims = IntVec{2, 1, 1, 1, 1};
    io::serialize_bundle(d4, dir + "/d4_quiver.json");

    // the frozen two-double-pole system and its star point
    const Gauss zeta(-3);
    MeromorphicSystem E = double_pole_example(Gauss(1), Gauss(2), Gauss(-3), Gauss(4), zeta);
    io::Bundle sys;
    sys.system = E;
    io::serialize_bundle(sys, dir + "/double_pole_system.json");

    std::vector<std::vector<Gauss>> eta = {{Gauss(1), Gauss(1)}, {zeta - Gauss(1), Gauss(0)}};
    std::vector<std::vector<Gauss>> lam = {{Gauss(2), Gauss(1)}, {Gauss(4), Gauss(-3)}};
    MeromorphicSystem S = E;
    std::vector<SplitType> types;
    for (int k = 0; k < 2; ++k) {
        for (int m = 0; m < 2; ++m) S.parts[k].c[m] += GMat::identity(2, eta[k][m]);
        types.push_back({{lam[k][0] + eta[k][0], lam[k][1] + eta[k][1]}, eta[k], 1});
    }
    StarPoint sp = system_to_rep(S, types);
    io::Bundle pt;
    pt.rep = sp.B;
    pt.lambda = sp.lam;
    pt.poles = E.poles;
    io::serialize_bundle(pt, dir + "/star22_point.json");

    // a level point on the (2,1,1) star with a complex parameter
    QuiverMult q = star_quiver({2, 1, 1});
    Lambda l = {{Gauss(0)}, {Gauss(1), Gauss(2)}, {Gauss(Rat(1, 2), Rat(1))}, {Gauss(Rat(-5, 2), Rat(-2))}};
    l[0][0] = -(l[1][0] + l[2][0] + l[3][0]) * Gauss(Rat(1, 2));
    for (std::uint64_t seed = 1; seed < 200; ++seed) {
        auto B = sample_level_point(q, {2, 1, 1, 1}, l, seed);
        if (B && is_stable(*B)) {
            io::Bundle b;
            b.rep = *B;
            b.lambda = l;
            b.seed = seed;
            io::serialize_bundle(b, dir + "/star211_point.json");
            return 0;
        }
    }
    std::cerr << "no stable point found\n";
    return 1;
}
