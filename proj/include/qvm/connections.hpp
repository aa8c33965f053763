#pragma once

#include <optional>
#include <vector>

#include "qvm/repvar.hpp"

namespace qvm {

// A(z) = sum_i sum_j A_{i,j} (z - t_i)^-j on a trivial bundle of rank n.
struct MeromorphicSystem {
    int n = 0;
    std::vector<Gauss> poles;
    std::vector<PrincipalPart<Gauss>> parts; // parts[i].coeff(j) = A_{i,j}

    int size() const { return static_cast<int>(poles.size()); }
    int order(int i) const { return parts[i].d; }
    void validate() const;
    GMat residue_sum() const;
    friend bool operator==(const MeromorphicSystem& a, const MeromorphicSystem& b) {
        return a.n == b.n && a.poles == b.poles && a.parts == b.parts;
    }
};

// No nonzero proper subspace is preserved by every coefficient: the unital algebra they generate is everything.
bool is_irreducible_system(const MeromorphicSystem& A);

// Some invertible f with f A_{i,j} f^-1 = A2_{i,j} for all i, j.
std::optional<GMat> conjugating_matrix(const MeromorphicSystem& A, const MeromorphicSystem& A2);

// A(z) - lam(z - t_i) 1, with lam given by its coefficients lam_1..lam_d.
MeromorphicSystem scalar_shift_system(const MeromorphicSystem& A, int i, const std::vector<Gauss>& lam);

// (W, T, X, Y) with W = W_1 + ... + W_n in consecutive blocks and T = t_i + N_i on W_i.
struct Realization {
    std::vector<Gauss> poles;
    std::vector<int> block; // dim W_i
    GMat T, X, Y;

    int dim() const { return T.rows(); }
    int offset(int i) const;
    GMat nilpotent(int i) const;
    GMat x_block(int i) const;
    GMat y_block(int i) const;
};

struct RealizationCheck {
    bool shape = false;     // T is block diagonal with T_i - t_i nilpotent
    bool identity = false;  // X_i N_i^{m-1} Y_i = A_{i,m}, and vanishes past the pole order
    bool kernel = false;    // Ker X_i meets Ker N_i trivially
    bool range = false;     // range Y_i + range N_i = W_i
    bool all() const { return shape && identity && kernel && range; }
};

RealizationCheck check_realization(const MeromorphicSystem& A, const Realization& R);

// The system X (z - T)^-1 Y, cut at the given pole orders (terms past them must vanish).
MeromorphicSystem realization_system(const Realization& R, int n, const std::vector<int>& orders);

// W_i = V (x) C^{k_i}, N_i the shift, X_i reads the first slot, Y_i stacks A_{i,1..k_i}.
Realization companion_realization(const MeromorphicSystem& A);

// The companion realization restricted to the Krylov span of Y and then cut by the joint kernel of X N^m.
Realization minimal_realization(const MeromorphicSystem& A);

// f: W -> W' with f T = T' f, X = X' f, f Y = Y'; nothing if there is no invertible solution.
std::optional<GMat> intertwine_realizations(const Realization& R, const Realization& R2);

// W / Ker(Y X + zeta), through a full-rank factorization of Y X + zeta.
MeromorphicSystem middle_convolution_of(const Realization& R, const std::vector<int>& orders, const Gauss& zeta);
MeromorphicSystem middle_convolution(const MeromorphicSystem& A, const Gauss& zeta);

// Star quivers: vertex 0 with d_0 = 1, and leg k > 0 joined to it by a single arrow.
void require_star(const QuiverMult& q);

// Phi(B): the pole part at t_k is -B_{<-k} (z - t_k - N_k)^-1 B_{k->}.
MeromorphicSystem phi_rep_to_system(const GRep& B, const std::vector<Gauss>& poles);

// (V-hat_0, sum (t_k + N_k), B_{0->}, B_{<-0}), a realization of Phi(B).
Realization star_realization(const GRep& B, const std::vector<Gauss>& poles);

// Xi = xi 1_{V_k} + eta 1_{V'_k} at one pole, xi and eta given to a common order.
struct SplitType {
    std::vector<Gauss> xi, eta;
    int dim = 0; // dim V_k

    std::vector<Gauss> difference() const; // xi - eta cut to its pole order
};

struct StarPoint {
    GRep B;
    Lambda lam;
    IntVec v;
};

// Inverse of Phi after the scalar shift by eta: a star point on the level lambda_0 = z^-1 sum res eta_k,
// lambda_k = xi_k - eta_k.
StarPoint system_to_rep(const MeromorphicSystem& A, const std::vector<SplitType>& types);

// Two double poles on C^2 with top coefficients lam12, lam22 and residues lam11 + zeta, lam21; the
// residues sum to -zeta when lam11 + lam21 = -2 zeta.
MeromorphicSystem double_pole_example(const Gauss& lam12, const Gauss& lam11, const Gauss& lam22, const Gauss& lam21,
                                      const Gauss& zeta, const std::vector<Gauss>& poles = {Gauss(0), Gauss(1)});

} // namespace qvm
