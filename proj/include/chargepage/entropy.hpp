/*
 * Reduced states, von Neumann entropy, Monte-Carlo Page-curve estimation,
 * and the state-counting entropy of a sector's maximally mixed state.
 *
 * The sampling loop is data-parallel over sample indices: every sample is
 * regenerated from (master seed, sample index) alone, per-sample entropies
 * land in a preallocated slot, and the mean/stderr reduction runs serially
 * in index order. Serial and OpenMP execution therefore produce
 * bit-identical estimates; Execution::serial is kept as the reference
 * implementation for tests and the benchmark.
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "chargepage/sectors.hpp"
#include "chargepage/sparse.hpp"

namespace chargepage {

// Von Neumann entropy (nats) across the cut after the first n_a sites,
// computed from the singular values of the 4^{N_A} x 4^{N_B} reshape.
// Singular values below 1e-14 count as exact zeros. The state must be
// normalized to 1e-8.
double entanglement_entropy(std::span<const cdouble> state, int n_a, int n_sites);
double entanglement_entropy(const SparseState& state, int n_a, int n_sites);

// Dense reduced density matrix rho_A = Tr_B |psi><psi| (test oracle for the
// Schmidt route, and the workhorse for state_counting_entropy).
Eigen::MatrixXcd reduced_density(std::span<const cdouble> state, int n_a,
                                 int n_sites);

// Entropy of Tr_B of the sector's maximally mixed state. Requires a dense
// 4^{N_A} matrix, so n_a <= 6.
double state_counting_entropy(const SectorBasis& basis, int n_a);

enum class Execution { serial, parallel };

struct PageCurvePoint {
    int n_a;
    double mean_nats;
    double stderr_nats;
    std::uint64_t samples;
};

struct PageCurveEstimate {
    SectorLabel label;
    std::uint64_t seed = 0;
    std::vector<PageCurvePoint> points;
    bool low_sample_warning = false;  // flagged when samples < 100

    const PageCurvePoint& at(int n_a) const;
};

PageCurveEstimate estimate_page_curve(const SectorBasis& basis,
                                      const std::vector<int>& n_a_list,
                                      std::uint64_t samples, std::uint64_t seed,
                                      Execution exec = Execution::parallel);

}  // namespace chargepage
