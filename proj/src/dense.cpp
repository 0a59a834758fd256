#include "chargepage/dense.hpp"

#include <stdexcept>

namespace chargepage {

Eigen::MatrixXcd to_dense_matrix(const SparseOperator& op) {
    if (op.dim > (1u << 16))
        throw std::invalid_argument("to_dense_matrix: dimension too large for dense work");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(op.dim, op.dim);
    for (std::uint64_t r = 0; r < op.dim; ++r)
        for (const auto& [c, v] : op.rows[r]) m(r, c) += v;
    return m;
}

Eigen::VectorXd dense_spectrum(const SparseOperator& op) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_dense_matrix(op),
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

Eigen::MatrixXcd eigenspace(const Eigen::MatrixXcd& herm, double lambda,
                            double tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
    const auto& vals = es.eigenvalues();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < vals.size(); ++i)
        if (std::abs(vals(i) - lambda) <= tol) keep.push_back(i);
    Eigen::MatrixXcd out(herm.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k)
        out.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]);
    return out;
}

}  // namespace chargepage
