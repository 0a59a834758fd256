#include <doctest.h>

#include <map>
#include <random>

#include "chargepage/charges.hpp"
#include "chargepage/dense.hpp"

using namespace chargepage;

namespace {

// Eigenvalue -> multiplicity at integer resolution.
std::map<int, int> spectrum_multiplicities(const SparseOperator& op) {
    Eigen::VectorXd vals = dense_spectrum(op);
    std::map<int, int> mult;
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        int rounded = int(std::lround(vals(i)));
        REQUIRE(std::abs(vals(i) - rounded) < 1e-10);
        ++mult[rounded];
    }
    return mult;
}

}  // namespace

TEST_CASE("q_charge(3) at N=1 is diagonal (+1, +1, -1, -1)") {
    Eigen::MatrixXcd m = to_dense_matrix(q_charge(3, 1).op);
    Eigen::Vector4d expected{1, 1, -1, -1};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            cdouble want = i == j ? cdouble{expected(i), 0} : cdouble{0, 0};
            CHECK(std::abs(m(i, j) - want) < 1e-14);
        }
    }
}

TEST_CASE("c_charge(3) at N=1 is diagonal (+1, -1, -1, +1)") {
    Eigen::MatrixXcd m = to_dense_matrix(c_charge(3, 1).op);
    Eigen::Vector4d expected{1, -1, -1, 1};
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(m(i, i) - cdouble{expected(i), 0}) < 1e-14);
}

TEST_CASE("q_charge(1) spectrum at N=2: {-2, 0, +2} x {4, 8, 4}") {
    auto mult = spectrum_multiplicities(q_charge(1, 2).op);
    REQUIRE(mult.size() == 3);
    CHECK(mult.at(-2) == 4);
    CHECK(mult.at(0) == 8);
    CHECK(mult.at(2) == 4);
}

TEST_CASE("c_charge(1) spectrum at N=2 equals the q_charge(1) spectrum") {
    auto q = spectrum_multiplicities(q_charge(1, 2).op);
    auto c = spectrum_multiplicities(c_charge(1, 2).op);
    CHECK(q == c);
}

TEST_CASE("eigenvalue-0 eigenspaces of Q1 and C1 at N=4 both have dim 96") {
    for (auto charge : {q_charge(1, 4), c_charge(1, 4)}) {
        auto mult = spectrum_multiplicities(charge.op);
        CHECK(mult.at(0) == 96);
    }
}

TEST_CASE("commuting charges commute at N=2") {
    Eigen::MatrixXcd c1 = to_dense_matrix(c_charge(1, 2).op);
    Eigen::MatrixXcd c2 = to_dense_matrix(c_charge(2, 2).op);
    CHECK((c1 * c2 - c2 * c1).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("charges are sums of at most N single-flip terms per row") {
    for (int n : {1, 2, 3}) {
        CHECK(q_charge(1, n).op.max_row_nnz() <= std::size_t(n));
        CHECK(c_charge(2, n).op.max_row_nnz() <= std::size_t(n));
        CHECK(q_charge(1, n).op.hermiticity_error() < 1e-12);
        CHECK(c_charge(2, n).op.hermiticity_error() < 1e-12);
    }
}

TEST_CASE("invalid alpha is rejected") {
    CHECK_THROWS_AS(q_charge(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(c_charge(4, 2), std::invalid_argument);
}

TEST_CASE("global charges equal sums of single-site Pauli strings") {
    const int n = 3;
    LatticeShape shape(n);
    std::mt19937_64 rng(41);
    std::normal_distribution<double> g;
    SparseState psi(shape.dim());
    for (std::uint64_t i = 0; i < shape.dim(); ++i)
        psi.amps.emplace_back(i, cdouble{g(rng), g(rng)});
    psi.normalize();

    for (int alpha = 1; alpha <= 3; ++alpha) {
        for (ChargeModel model : {ChargeModel::noncommuting, ChargeModel::commuting}) {
            const SparseOperator& op = make_charge(model, alpha, n).op;
            std::vector<cdouble> via_op = op.apply(psi).to_dense();
            std::vector<cdouble> via_hermitian = apply_hermitian(op, psi).to_dense();
            std::vector<cdouble> via_strings(shape.dim(), cdouble{0, 0});
            for (int site = 0; site < n; ++site) {
                std::vector<PauliFactor> factors{
                    {site, SiteQubit::a, Axis(alpha)}};
                if (model == ChargeModel::commuting)
                    factors.push_back({site, SiteQubit::b, Axis(alpha)});
                accumulate(via_strings,
                           apply_pauli_string(factors, shape, psi), 1.0);
            }
            for (std::uint64_t i = 0; i < shape.dim(); ++i) {
                CHECK(std::abs(via_op[i] - via_strings[i]) < 1e-12);
                CHECK(std::abs(via_hermitian[i] - via_strings[i]) < 1e-12);
            }
        }
    }
}

TEST_CASE("spin_squared_a eigenvalues: single site 3/4; N=2 gives 0 and 2") {
    // N=1: s = 1/2 everywhere, s(s+1) = 3/4 (x2 from the b qubit).
    auto vals1 = dense_spectrum(spin_squared_a(1));
    for (Eigen::Index i = 0; i < vals1.size(); ++i)
        CHECK(vals1(i) == doctest::Approx(0.75).epsilon(1e-12));

    // N=2 on the a factor: singlet 0 (x1) and triplet 2 (x3).
    auto vals2 = dense_spectrum(spin_squared_on_register(2));
    REQUIRE(vals2.size() == 4);
    CHECK(vals2(0) == doctest::Approx(0.0).epsilon(1e-12));
    for (int i = 1; i < 4; ++i) CHECK(vals2(i) == doctest::Approx(2.0));
}

TEST_CASE("multiplicity of s=0 on the a factor at N=4 is 2") {
    auto vals = dense_spectrum(spin_squared_on_register(4));
    int zeros = 0;
    for (Eigen::Index i = 0; i < vals.size(); ++i)
        if (std::abs(vals(i)) < 1e-9) ++zeros;
    CHECK(zeros == 2);
}

TEST_CASE("spin_squared_a commutes with Z_a^tot") {
    Eigen::MatrixXcd s2 = to_dense_matrix(spin_squared_a(2));
    Eigen::MatrixXcd z = to_dense_matrix(z_a_total(2));
    CHECK((s2 * z - z * s2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("verify_criteria passes at N=1 and N=2") {
    for (int n : {1, 2}) {
        CriteriaReport report = verify_criteria(n);
        for (const auto& check : report.checks) {
            INFO(check.name, ": ", check.detail);
            CHECK(check.pass);
        }
        CHECK(report.all_pass());
    }
}

TEST_CASE("verify_criteria passes at N=3 and N=4 (dense oracles)") {
    for (int n : {3, 4}) {
        CriteriaReport report = verify_criteria(n);
        INFO("N = ", n);
        CHECK(report.all_pass());
    }
}

TEST_CASE("single-site identity C1 C2 + C3 = 0 holds exactly") {
    Eigen::MatrixXcd c1 = to_dense_matrix(c_charge(1, 1).op);
    Eigen::MatrixXcd c2 = to_dense_matrix(c_charge(2, 1).op);
    Eigen::MatrixXcd c3 = to_dense_matrix(c_charge(3, 1).op);
    CHECK((c1 * c2 + c3).cwiseAbs().maxCoeff() < 1e-14);
}
