#pragma once

#include <string>
#include <vector>

#include "qvm/kac_weyl.hpp"

namespace qvm {

// One normalization: the pole it was taken at and the types on both sides.
struct NormalizationStep {
    std::string pole, base;
    std::string from, to;
    bool weyl_checked = false; // W(from) = W(to) x| Z/2 through the pole/base swap, verified on samples

    std::string weyl_decomposition() const;
};

struct NormalizationChain {
    QuiverMult start;
    std::string type;
    std::vector<NormalizationStep> steps;

    std::string arrows() const; // "C_3 -> A_3"; just the type when no step is taken
};

// Normalizes at the first irregular pole vertex until none is left.
NormalizationChain normalization_chain(const QuiverMult& q, int weyl_trials = 20);

struct PainleveRow {
    std::vector<int> legs;
    int moduli_dim = 0; // expected dimension of the family the tuple belongs to
    QuiverMult quiver;
    IntVec v;
    std::string type;
    long long expected = 0;
    NormalizationChain chain;
};

struct PainleveReport {
    std::vector<PainleveRow> rows;
    std::vector<NormalizationChain> related; // chains on doubled-end paths that close the table
};

const std::vector<std::vector<int>>& painleve_tuples(int moduli_dim);
PainleveReport catalog_painleve();

} // namespace qvm
