#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qvm/quiver.hpp"

namespace qvm {

struct CartanData {
    IntMat adj;   // a_ij, number of arrows between i and j
    IntVec d;     // multiplicities
    IntMat C;     // 2 - A D
    IntMat sym;   // D C, the symmetrised form (alpha_i, alpha_j)
    int size() const { return static_cast<int>(d.size()); }
};

CartanData cartan_data(const QuiverMult& q);

// (v, w) for the form (alpha_i, alpha_j) = d_i c_ij.
long long pair(const CartanData& cd, const IntVec& v, const IntVec& w);
Gauss pair(const CartanData& cd, const IntVec& v, const std::vector<Gauss>& w);

IntVec weyl_s(const CartanData& cd, int i, IntVec v);
Lambda weyl_r(const CartanData& cd, int i, const Lambda& lam);

// Letters are applied in the order written: {i1, i2} applies s_i1 first.
struct WeylImage {
    IntVec v;
    Lambda lam;
    bool nonnegative;
};
WeylImage apply_weyl_word(const CartanData& cd, const std::vector<int>& word, IntVec v, Lambda lam);

// Order of s_i s_j; nullopt for infinite order.
std::optional<int> coxeter_order(const CartanData& cd, int i, int j);

enum class RootKind { Real, Imaginary, NotRoot };
const char* root_kind_name(RootKind k);
RootKind classify_root(const CartanData& cd, const IntVec& v);

long long expected_dim(const CartanData& cd, const IntVec& v);

// Label like "D_4^{(1)}" or "G_2" when C matches a catalog entry up to relabelling; empty otherwise.
std::string classify_dynkin_type(const IntMat& C);

struct DynkinEntry {
    std::string label;
    IntMat C;
    bool affine;
};
// Every catalog entry with exactly n nodes.
std::vector<DynkinEntry> dynkin_catalog(int n);

// Smallest positive integer vector in the kernel of C, if C is affine.
std::optional<IntVec> null_root(const IntMat& C);

bool connected_support(const CartanData& cd, const IntVec& v);

} // namespace qvm
