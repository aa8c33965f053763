#pragma once

#include <string>
#include <vector>

#include "qvm/scalar.hpp"

namespace qvm {

struct Arrow {
    std::string id;
    int out = 0, in = 0;
};

// Finite quiver without loops, each vertex carrying a multiplicity d_i >= 1.
struct QuiverMult {
    std::vector<std::string> names;
    std::vector<Arrow> arrows;
    std::vector<int> mult;

    int size() const { return static_cast<int>(names.size()); }
    int index(const std::string& name) const;
    int arrow_index(const std::string& id) const;
    void validate() const;
    friend bool operator==(const QuiverMult& a, const QuiverMult& b);
};

// Star: centre "0" with d = 1 and legs "1".."n" carrying the given multiplicities, arrows leg -> centre.
QuiverMult star_quiver(const std::vector<int>& leg_mult);

// Path 0 - 1 - ... - n-1 with arrows i -> i+1.
QuiverMult chain_quiver(const std::vector<int>& mult);

using IntVec = std::vector<long long>;
using IntMat = std::vector<IntVec>;

// Coefficients lambda_{i,1..d_i} per vertex index.
using Lambda = std::vector<std::vector<Gauss>>;

Lambda zero_lambda(const QuiverMult& q);

// Residues lambda_{i,1}, one per vertex.
std::vector<Gauss> residues(const Lambda& lam);

// Half-arrows: every arrow and its reverse. eps = +1 on the original orientation.
struct HalfArrow {
    int arrow;
    bool reversed;
    int out, in;
    int eps;
};

std::vector<HalfArrow> half_arrows(const QuiverMult& q);

} // namespace qvm
