/*
 * Explicit orthonormal bases for every constrained subspace the two models
 * use, and measurement-outcome distributions over them.
 *
 * Conventions:
 *  - Spin quantum numbers are passed as twice their value (s2 = 2s,
 *    m2 = 2m), so half-integers stay exact.
 *  - Commuting sectors are labeled by halved eigenvalues: the stored
 *    integers cx2, cy2, cz2 are the raw C_alpha^tot eigenvalues, i.e.
 *    twice the halved labels (c_x, c_y, c_z). A label like (0, -1, 1) in
 *    halved units is stored as cx2 = 0, cy2 = -2, cz2 = 2.
 *  - OutcomeDistribution keys are raw eigenvalues (= 2 gamma), so gamma
 *    itself may be a half-integer.
 *
 * The four Bell states and their (C_1, C_2, C_3) eigenvalues:
 *   B1 = (|da ub> - |ua db>)/sqrt2 -> (-1, -1, -1)   [singlet]
 *   B2 = (|da db> - |ua ub>)/sqrt2 -> (-1, +1, +1)
 *   B3 = (|da db> + |ua ub>)/sqrt2 -> (+1, -1, +1)
 *   B4 = (|da ub> + |ua db>)/sqrt2 -> (+1, +1, -1)
 */
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chargepage/charges.hpp"
#include "chargepage/sparse.hpp"

namespace chargepage {

enum class SectorKind { microcanonical, amc, single_charge, joint_commuting };

std::string to_string(SectorKind k);

struct sector_empty_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SectorLabel {
    ChargeModel model = ChargeModel::noncommuting;
    SectorKind kind = SectorKind::microcanonical;
    int n_sites = 0;
    int s2 = 0, m2 = 0;             // noncommuting (s, m), doubled
    int cx2 = 0, cy2 = 0, cz2 = 0;  // commuting raw eigenvalues (= 2 * halved)
    int alpha = 0;                  // single-charge sectors

    std::string to_string() const;  // canonical key, also used for caching
    bool operator==(const SectorLabel&) const = default;
};

struct BellPopulation {
    std::array<int, 4> p{0, 0, 0, 0};
    int total() const { return p[0] + p[1] + p[2] + p[3]; }
    // Raw (C_1, C_2, C_3) eigenvalues of any product state in this class.
    std::array<int, 3> raw_eigenvalues() const;
};

struct SectorBasis {
    SectorLabel label;
    std::vector<SparseState> vectors;
    std::uint64_t ambient_dim = 0;
    std::uint64_t dim() const { return vectors.size(); }
    bool empty() const { return vectors.empty(); }
};

// All Bell product states realizing the given site populations
// (multinomial(N; P1..P4) states, each with 2^N amplitudes of modulus
// 2^{-N/2}). Throws if the populations do not sum to N.
std::vector<SparseState> bell_product_basis(const BellPopulation& pop, int n);

// Joint eigenvalue-0 eigenspace of C_{1,2,3}^tot; requires N = 0 mod 4.
SectorBasis microcanonical_commuting(int n);

// Joint eigenvalue-0 eigenspace of Q_{1,2,3}^tot (= s=0 of the a qubits
// tensored with the full b factor); requires N even.
SectorBasis microcanonical_noncommuting(int n);

// Orthonormal basis of the (s, m) eigenspace of (S^2, S_z) for n_spins
// spin-1/2's, over the 2^{n_spins} register. Built by coupling one spin at
// a time; the path through intermediate total spins indexes the basis.
// Inconsistent quantum numbers yield an empty list.
std::vector<SparseState> coupled_spin_basis(int n_spins, int s2, int m2);

// (s, m) eigenspace of the a qubits tensored with the full b factor.
SectorBasis amc_noncommuting(int n, int s2, int m2);

// Shared eigenspace of C_{1,2,3}^tot with the given raw eigenvalues. The
// three constraints fix the Bell populations uniquely; the result is empty
// when they have no nonnegative integer solution.
SectorBasis commuting_sector(int n, int cx2, int cy2, int cz2);

struct OutcomeDistribution {
    // raw eigenvalue (= 2 gamma) -> probability
    std::map<int, double> p;
    double total() const;
    double at_raw(int raw) const;  // 0 when absent
    bool single_peaked() const;    // unimodal over the ordered outcomes
};

struct AmcAnalogResult {
    SectorBasis basis;
    bool matched = false;
    std::vector<BellPopulation> populations;   // one per component sector
    std::array<OutcomeDistribution, 3> p_commuting;
    std::array<OutcomeDistribution, 3> p_noncommuting;
};

// Union of the commuting sectors with cz = m and |cx|, |cy| <= s; matched
// is true when all three outcome distributions equal the noncommuting
// (s, m) sector's, elementwise to 1e-9.
AmcAnalogResult amc_commuting_analog(int n, int s2, int m2);

// Eigenvalue-0 eigenspace of one global charge.
SectorBasis single_charge_sector(ChargeModel model, int alpha, int n);

// Averaged measurement distribution of `charge` over the maximally mixed
// state of the sector: p(gamma) = (1/dim) sum_l ||Pi_gamma psi_l||^2.
OutcomeDistribution outcome_distribution(const SectorBasis& basis,
                                         const ChargeFamily& charge);

// Analytic oracle for the (s, m) sector distributions: |d^s_{gamma,m}(pi/2)|^2,
// independent of N.
OutcomeDistribution wigner_d_distribution(int s2, int m2);

struct PartialConstraintReport {
    std::uint64_t dim_kernel_c1c2 = 0;   // dim(ker C1 ^ ker C2)
    std::uint64_t dim_c0 = 0;            // dim of the full commuting microcanonical
    std::uint64_t dim_kernel_q1q2 = 0;   // dim(ker Q1 ^ ker Q2)
    std::uint64_t dim_n0 = 0;            // dim of the noncommuting microcanonical
    bool q_kernel_equals_n0 = false;
    bool c_kernel_strictly_larger = false;
};

// Quantifies how much two charges constrain the third: the joint Q1,Q2
// kernel already equals the full noncommuting microcanonical subspace,
// while the joint C1,C2 kernel strictly exceeds the commuting one.
// N in {4, 8}.
PartialConstraintReport partial_constraint_check(int n);

// Max |G - 1| entry of the Gram matrix of the basis (block structure of
// the sector constructions is exploited where available).
double orthonormality_error(const SectorBasis& basis);

// Worst eigenvector residual ||O v - lambda v|| of the basis against its
// defining charges.
double defining_residual(const SectorBasis& basis);

}  // namespace chargepage
