/*
 * The two families of global charges and the auxiliary spin operators.
 *
 * Noncommuting family (SU(2)-type), summed over sites:
 *   Q_1 = X_a (x) 1_b,  Q_2 = Y_a (x) 1_b,  Q_3 = Z_a (x) 1_b.
 * Commuting family (Bell-type):
 *   C_1 = X_a (x) X_b,  C_2 = Y_a (x) Y_b,  C_3 = Z_a (x) Z_b.
 *
 * Both families are extensive sums of identical single-site observables
 * with spectrum {-N, -N+2, ..., N}. The analogy criteria between the two
 * families are verified numerically by verify_criteria (dense, N <= 4).
 */
#pragma once

#include <string>
#include <vector>

#include "chargepage/lattice.hpp"
#include "chargepage/sparse.hpp"

namespace chargepage {

enum class ChargeModel { noncommuting, commuting };

std::string to_string(ChargeModel m);

struct ChargeFamily {
    ChargeModel model;
    int alpha;    // 1, 2, or 3
    int n_sites;
    SparseOperator op;
};

ChargeFamily q_charge(int alpha, int n_sites);
ChargeFamily c_charge(int alpha, int n_sites);
ChargeFamily make_charge(ChargeModel model, int alpha, int n_sites);

// Z_a^tot (equals q_charge(3, n).op; diagonal).
SparseOperator z_a_total(int n_sites);

// Total-spin-squared of the a qubits on the full 4^N lattice,
// [(X_a^tot)^2 + (Y_a^tot)^2 + (Z_a^tot)^2] / 4, eigenvalues s(s+1).
SparseOperator spin_squared_a(int n_sites);

// Same operators restricted to an n-qubit register (dimension 2^n, spin j
// at bit j). The coupled-spin sector machinery works on this factor.
SparseOperator pauli_total_on_register(Axis axis, int n_qubits);
SparseOperator spin_squared_on_register(int n_qubits);

// Site permutation of a state's basis indices (both qubits of a site move
// together); perm[j] = destination site of site j.
SparseState permute_sites(const SparseState& state, const std::vector<int>& perm,
                          const LatticeShape& shape);

struct CriteriaReport {
    struct Check {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Check> checks;
    bool all_pass() const;
};

// Numerical verification of the model-analogy criteria at small N
// (dense oracles; requires N <= 4):
//  - single-site products: Q_a Q_b = i eps_{abc} Q_c, C_a C_b = -C_c,
//    Q_a^2 = C_a^2 = 1 (exact Pauli algebra),
//  - spectrum of each Q_alpha^tot equals that of C_alpha^tot (1e-10),
//  - [C_alpha, C_beta] = 0, [Q_1, Q_2] = 2i Q_3,
//  - charge-density commutator norm ||[Q/N, Q'/N]|| <= 2/N,
//  - permutation invariance of all six charges on random states.
CriteriaReport verify_criteria(int n_sites);

}  // namespace chargepage
