#include "chargepage/charges.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "chargepage/dense.hpp"

namespace chargepage {

namespace {

constexpr cdouble kI{0.0, 1.0};

void check_alpha(int alpha) {
    if (alpha < 1 || alpha > 3)
        throw std::invalid_argument("charge: alpha must be 1, 2, or 3");
}

// Sum over the given bit positions of a single-qubit Pauli.
SparseOperator pauli_sum_on_bits(Axis axis, std::uint64_t dim,
                                 const std::vector<int>& bits) {
    SparseOperator op(dim);
    for (std::uint64_t r = 0; r < dim; ++r) {
        double diag = 0.0;
        for (int bit : bits) {
            std::uint64_t m = std::uint64_t{1} << bit;
            switch (axis) {
                case Axis::X: op.rows[r].emplace_back(r ^ m, cdouble{1.0, 0.0}); break;
                case Axis::Y: op.rows[r].emplace_back(r ^ m, (r & m) ? kI : -kI); break;
                case Axis::Z: diag += (r & m) ? -1.0 : 1.0; break;
            }
        }
        if (axis == Axis::Z) op.rows[r].emplace_back(r, cdouble{diag, 0.0});
    }
    op.canonicalize();
    return op;
}

// (sum_j S_j)^2 over the given bits, built directly:
//   diagonal   ((sum_j z_j)^2 + 2 n) / 4 with z_j = +/-1 from bit j,
//   off-diagonal 1 at r ^ m_j ^ m_k for every unordered pair of unequal bits
//   (the XX and YY pieces cancel on equal bits and add on unequal ones).
SparseOperator spin_squared_on_bits(std::uint64_t dim,
                                    const std::vector<int>& bits) {
    const int n = static_cast<int>(bits.size());
    SparseOperator op(dim);
    for (std::uint64_t r = 0; r < dim; ++r) {
        int down = 0;
        for (int bit : bits)
            if (r & (std::uint64_t{1} << bit)) ++down;
        double z = static_cast<double>(n - 2 * down);
        op.rows[r].emplace_back(r, cdouble{(z * z + 2.0 * n) / 4.0, 0.0});
        for (int j = 0; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                std::uint64_t mj = std::uint64_t{1} << bits[j];
                std::uint64_t mk = std::uint64_t{1} << bits[k];
                bool bj = (r & mj) != 0, bk = (r & mk) != 0;
                if (bj != bk) op.rows[r].emplace_back(r ^ mj ^ mk, cdouble{1.0, 0.0});
            }
        }
    }
    op.canonicalize();
    return op;
}

std::vector<int> a_bits(const LatticeShape& shape) {
    std::vector<int> bits;
    for (int j = 0; j < shape.n_sites; ++j) bits.push_back(shape.bit_of(j, SiteQubit::a));
    return bits;
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

// Dense 4x4 single-site observables in the site-local basis v = 2a + b
// (a qubit is the high bit of the site value).
Eigen::Matrix4cd single_site(ChargeModel model, int alpha) {
    Eigen::Matrix2cd X, Y, Z, I;
    X << 0, 1, 1, 0;
    Y << 0, cdouble{0, -1}, cdouble{0, 1}, 0;
    Z << 1, 0, 0, -1;
    I.setIdentity();
    auto pick = [&](int a) { return a == 1 ? X : (a == 2 ? Y : Z); };
    return model == ChargeModel::noncommuting ? kron2(pick(alpha), I)
                                              : kron2(pick(alpha), pick(alpha));
}

}  // namespace

std::string to_string(ChargeModel m) {
    return m == ChargeModel::noncommuting ? "noncommuting" : "commuting";
}

ChargeFamily q_charge(int alpha, int n_sites) {
    check_alpha(alpha);
    LatticeShape shape(n_sites);
    return {ChargeModel::noncommuting, alpha, n_sites,
            pauli_sum_on_bits(static_cast<Axis>(alpha), shape.dim(), a_bits(shape))};
}

ChargeFamily c_charge(int alpha, int n_sites) {
    check_alpha(alpha);
    LatticeShape shape(n_sites);
    const std::uint64_t dim = shape.dim();
    SparseOperator op(dim);
    for (std::uint64_t r = 0; r < dim; ++r) {
        double diag = 0.0;
        for (int j = 0; j < n_sites; ++j) {
            std::uint64_t ma = shape.mask_of(j, SiteQubit::a);
            std::uint64_t mb = shape.mask_of(j, SiteQubit::b);
            switch (static_cast<Axis>(alpha)) {
                case Axis::X:
                    op.rows[r].emplace_back(r ^ ma ^ mb, cdouble{1.0, 0.0});
                    break;
                case Axis::Y: {
                    cdouble va = (r & ma) ? kI : -kI;
                    cdouble vb = (r & mb) ? kI : -kI;
                    op.rows[r].emplace_back(r ^ ma ^ mb, va * vb);
                    break;
                }
                case Axis::Z: {
                    double za = (r & ma) ? -1.0 : 1.0;
                    double zb = (r & mb) ? -1.0 : 1.0;
                    diag += za * zb;
                    break;
                }
            }
        }
        if (static_cast<Axis>(alpha) == Axis::Z)
            op.rows[r].emplace_back(r, cdouble{diag, 0.0});
    }
    op.canonicalize();
    return {ChargeModel::commuting, alpha, n_sites, std::move(op)};
}

ChargeFamily make_charge(ChargeModel model, int alpha, int n_sites) {
    return model == ChargeModel::noncommuting ? q_charge(alpha, n_sites)
                                              : c_charge(alpha, n_sites);
}

SparseOperator z_a_total(int n_sites) { return q_charge(3, n_sites).op; }

SparseOperator spin_squared_a(int n_sites) {
    LatticeShape shape(n_sites);
    return spin_squared_on_bits(shape.dim(), a_bits(shape));
}

SparseOperator pauli_total_on_register(Axis axis, int n_qubits) {
    std::vector<int> bits(n_qubits);
    for (int j = 0; j < n_qubits; ++j) bits[j] = j;
    return pauli_sum_on_bits(axis, std::uint64_t{1} << n_qubits, bits);
}

SparseOperator spin_squared_on_register(int n_qubits) {
    std::vector<int> bits(n_qubits);
    for (int j = 0; j < n_qubits; ++j) bits[j] = j;
    return spin_squared_on_bits(std::uint64_t{1} << n_qubits, bits);
}

SparseState permute_sites(const SparseState& state, const std::vector<int>& perm,
                          const LatticeShape& shape) {
    if (static_cast<int>(perm.size()) != shape.n_sites)
        throw std::invalid_argument("permute_sites: permutation size mismatch");
    SparseState out(state.dim);
    out.amps.reserve(state.amps.size());
    for (const auto& [idx, amp] : state.amps) {
        std::uint64_t dest = 0;
        for (int j = 0; j < shape.n_sites; ++j) {
            std::uint64_t v = (idx >> (2 * j)) & 3u;
            dest |= v << (2 * perm[j]);
        }
        out.amps.emplace_back(dest, amp);
    }
    out.canonicalize();
    return out;
}

bool CriteriaReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace {

std::string fmt_err(double err) {
    std::ostringstream os;
    os << "max error " << err;
    return os.str();
}

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

CriteriaReport verify_criteria(int n_sites) {
    if (n_sites < 1 || n_sites > 4)
        throw std::invalid_argument("verify_criteria: dense oracles require N <= 4");
    CriteriaReport report;
    auto add = [&](std::string name, bool pass, std::string detail) {
        report.checks.push_back({std::move(name), pass, std::move(detail)});
    };

    // Single-site algebra (criterion 4 and the unitarity identity).
    {
        Eigen::Matrix4cd q[4], c[4], id = Eigen::Matrix4cd::Identity();
        for (int a = 1; a <= 3; ++a) {
            q[a] = single_site(ChargeModel::noncommuting, a);
            c[a] = single_site(ChargeModel::commuting, a);
        }
        double err = 0.0;
        for (int a = 1; a <= 3; ++a) {
            int b = a % 3 + 1, g = b % 3 + 1;  // cyclic (a, b, g)
            err = std::max(err, max_abs_diff(q[a] * q[b], kI * q[g]));
            err = std::max(err, max_abs_diff(c[a] * c[b], -c[g]));
            err = std::max(err, max_abs_diff(q[a] * q[a], id));
            err = std::max(err, max_abs_diff(c[a] * c[a], id));
        }
        add("single-site products (Q_aQ_b = i eps Q_c, C_aC_b = -C_c, squares = 1)",
            err < 1e-12, fmt_err(err));
    }

    // Spectra of global charges match across models (criterion 3) and lie
    // in {-N, -N+2, ..., N}.
    {
        double err = 0.0, parity_err = 0.0;
        for (int a = 1; a <= 3; ++a) {
            Eigen::VectorXd sq = dense_spectrum(q_charge(a, n_sites).op);
            Eigen::VectorXd sc = dense_spectrum(c_charge(a, n_sites).op);
            err = std::max(err, (sq - sc).cwiseAbs().maxCoeff());
            for (Eigen::Index i = 0; i < sq.size(); ++i) {
                double rounded = std::round(sq(i));
                parity_err = std::max(parity_err, std::abs(sq(i) - rounded));
                bool in_range = rounded >= -n_sites && rounded <= n_sites &&
                                std::fmod(std::abs(rounded - n_sites), 2.0) < 0.5;
                if (!in_range) parity_err = std::max(parity_err, 1.0);
            }
        }
        add("global spectra equal across models (criterion 3)", err < 1e-10, fmt_err(err));
        add("spectrum contained in {-N..N} with step 2", parity_err < 1e-10,
            fmt_err(parity_err));
    }

    // Commutation structure of the global families.
    {
        Eigen::MatrixXcd c1 = to_dense_matrix(c_charge(1, n_sites).op);
        Eigen::MatrixXcd c2 = to_dense_matrix(c_charge(2, n_sites).op);
        Eigen::MatrixXcd c3 = to_dense_matrix(c_charge(3, n_sites).op);
        double cerr = std::max({max_abs_diff(c1 * c2, c2 * c1),
                                max_abs_diff(c2 * c3, c3 * c2),
                                max_abs_diff(c3 * c1, c1 * c3)});
        add("[C_alpha, C_beta] = 0", cerr < 1e-12, fmt_err(cerr));

        Eigen::MatrixXcd q1 = to_dense_matrix(q_charge(1, n_sites).op);
        Eigen::MatrixXcd q2 = to_dense_matrix(q_charge(2, n_sites).op);
        Eigen::MatrixXcd q3 = to_dense_matrix(q_charge(3, n_sites).op);
        double qerr = max_abs_diff(q1 * q2 - q2 * q1, 2.0 * kI * q3);
        add("[Q_1, Q_2] = 2i Q_3", qerr < 1e-12, fmt_err(qerr));

        // Charge densities commute up to O(1/N): ||[Q1/N, Q2/N]|| = 2/N here.
        Eigen::MatrixXcd comm = (q1 * q2 - q2 * q1) / double(n_sites * n_sites);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(kI * comm,
                                                           Eigen::EigenvaluesOnly);
        double norm = es.eigenvalues().cwiseAbs().maxCoeff();
        add("charge-density commutator norm <= 2/N",
            norm <= 2.0 / n_sites + 1e-10, fmt_err(norm));
    }

    // Permutation invariance on random states.
    if (n_sites >= 2) {
        LatticeShape shape(n_sites);
        std::mt19937_64 rng(12345);
        std::normal_distribution<double> g;
        double err = 0.0;
        for (int trial = 0; trial < 4; ++trial) {
            SparseState psi(shape.dim());
            for (std::uint64_t i = 0; i < shape.dim(); ++i)
                psi.amps.emplace_back(i, cdouble{g(rng), g(rng)});
            psi.normalize();
            std::vector<int> perm(n_sites);
            for (int j = 0; j < n_sites; ++j) perm[j] = j;
            std::shuffle(perm.begin(), perm.end(), rng);
            for (int a = 1; a <= 3; ++a) {
                for (ChargeModel m : {ChargeModel::noncommuting, ChargeModel::commuting}) {
                    const SparseOperator& op = make_charge(m, a, n_sites).op;
                    SparseState lhs = permute_sites(op.apply(psi), perm, shape);
                    SparseState rhs = op.apply(permute_sites(psi, perm, shape));
                    std::vector<cdouble> dl = lhs.to_dense(), dr = rhs.to_dense();
                    for (std::uint64_t i = 0; i < shape.dim(); ++i)
                        err = std::max(err, std::abs(dl[i] - dr[i]));
                }
            }
        }
        add("all charges permutation-invariant", err < 1e-10, fmt_err(err));
    }

    return report;
}

}  // namespace chargepage
