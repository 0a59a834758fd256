/*
 * Sparse complex vectors and Hermitian sparse operators over a fixed
 * Hilbert-space dimension. These are the containers every other module
 * builds on: sector basis vectors, global charges, spin operators.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace chargepage {

using cdouble = std::complex<double>;

// Amplitudes below this are treated as exact zeros after arithmetic.
inline constexpr double kAmplitudePrune = 1e-14;

// A pure state (or unnormalized vector) stored as sorted (index, amplitude)
// pairs over a dimension-`dim` Hilbert space. Indices are strictly
// increasing with no duplicates.
struct SparseState {
    std::uint64_t dim = 0;
    std::vector<std::pair<std::uint64_t, cdouble>> amps;

    SparseState() = default;
    explicit SparseState(std::uint64_t dimension) : dim(dimension) {}

    std::size_t nnz() const { return amps.size(); }
    double norm_sq() const;
    double norm() const;
    void normalize();

    // Sorts entries, merges duplicate indices, drops |amp| <= prune.
    void canonicalize(double prune = kAmplitudePrune);

    // Checks the sorted/no-duplicate invariant (cheap, linear scan).
    bool is_canonical() const;

    std::vector<cdouble> to_dense() const;
};

SparseState sparse_from_dense(std::span<const cdouble> dense,
                              double prune = kAmplitudePrune);

// dense += coeff * state
void accumulate(std::vector<cdouble>& dense, const SparseState& state,
                cdouble coeff);

// <a|b>; both must share the same dimension.
cdouble inner_product(const SparseState& a, const SparseState& b);

// A sparse operator stored by rows. All operators in this project are
// Hermitian sums of Pauli strings; hermiticity is verified on demand,
// not assumed by the storage.
struct SparseOperator {
    std::uint64_t dim = 0;
    std::vector<std::vector<std::pair<std::uint64_t, cdouble>>> rows;

    SparseOperator() = default;
    explicit SparseOperator(std::uint64_t dimension)
        : dim(dimension), rows(dimension) {}

    void add_entry(std::uint64_t row, std::uint64_t col, cdouble value);
    void canonicalize(double prune = kAmplitudePrune);

    std::size_t nnz() const;
    std::size_t max_row_nnz() const;

    // out = A * in (dense in/out, both of length dim).
    void apply(std::span<const cdouble> in, std::span<cdouble> out) const;
    SparseState apply(const SparseState& in,
                      double prune = kAmplitudePrune) const;

    // max |A[i][j] - conj(A[j][i])| over stored entries.
    double hermiticity_error() const;
};

// A * v for Hermitian A without densifying: column c of A is the conjugate
// of row c. Only valid when A = A^dagger (all charges here are).
SparseState apply_hermitian(const SparseOperator& op, const SparseState& v,
                            double prune = kAmplitudePrune);

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);
SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);
SparseOperator scale(const SparseOperator& a, cdouble factor);

// ||A v - lambda v|| for a sparse vector v (used for eigenvector residuals).
double eigen_residual(const SparseOperator& op, const SparseState& v,
                      double lambda);

}  // namespace chargepage
