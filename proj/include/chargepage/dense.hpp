/*
 * Dense (Eigen) bridges for the sparse containers. Dense matrices are only
 * used for small-N oracles, reduced density matrices, and Schmidt spectra;
 * everything global stays sparse.
 */
#pragma once

#include <Eigen/Dense>

#include "chargepage/sparse.hpp"

namespace chargepage {

Eigen::MatrixXcd to_dense_matrix(const SparseOperator& op);

// Sorted (ascending) eigenvalues of a Hermitian sparse operator.
Eigen::VectorXd dense_spectrum(const SparseOperator& op);

// Orthonormal basis (columns) of the eigenvalue-`lambda` eigenspace of a
// Hermitian matrix, to tolerance `tol` on the eigenvalues.
Eigen::MatrixXcd eigenspace(const Eigen::MatrixXcd& herm, double lambda,
                            double tol = 1e-9);

}  // namespace chargepage
