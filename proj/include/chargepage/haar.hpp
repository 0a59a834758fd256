/*
 * Reproducible Haar-random state sampling within a sector.
 *
 * Randomness comes from Philox4x32-10, a counter-based generator: the
 * normal draw for coefficient l of sample k under master seed S is a pure
 * function of (S, k, l). Sampling is therefore independent of thread
 * scheduling and worker count, and sample k can be regenerated in
 * isolation.
 */
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "chargepage/sectors.hpp"
#include "chargepage/sparse.hpp"

namespace chargepage {

// One 128-bit Philox4x32-10 block. key = master seed; counter halves are
// (draw index, stream index).
std::array<std::uint32_t, 4> philox4x32(std::uint64_t key, std::uint64_t draw,
                                        std::uint64_t stream);

// Uniform double in (0, 1] built from 64 random bits.
double philox_uniform(std::uint32_t hi, std::uint32_t lo);

// Standard complex normal (E|c|^2 = 1): (g1 + i g2)/sqrt(2) with g1, g2
// independent standard normals via Box-Muller, one Philox block per draw.
cdouble complex_normal(std::uint64_t seed, std::uint64_t stream,
                       std::uint64_t draw);

struct SamplerConfig {
    std::uint64_t master_seed = 0;
    std::uint64_t sample_index = 0;
};

// Haar-random state sum_l c_l |psi_l> / C_norm as a dense vector over the
// sector's ambient Hilbert space. Unit norm to 1e-12.
std::vector<cdouble> sample_state_dense(const SectorBasis& basis,
                                        const SamplerConfig& cfg);
SparseState sample_state(const SectorBasis& basis, const SamplerConfig& cfg);

// The raw coefficient vector (c_0 .. c_{dim-1}) before normalization;
// used wherever the sampling can stay in coefficient space.
std::vector<cdouble> sample_coefficients(std::uint64_t dim,
                                         const SamplerConfig& cfg);

// Haar-random unitary via QR of a Gaussian matrix with the R-diagonal
// phase fix. Used by the invariance tests.
Eigen::MatrixXcd haar_unitary(int dim, std::uint64_t seed);

}  // namespace chargepage
