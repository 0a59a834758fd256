#include <doctest.h>

#include <cmath>
#include <set>

#include "chargepage/asymptotics.hpp"
#include "chargepage/charges.hpp"
#include "chargepage/dense.hpp"
#include "chargepage/sectors.hpp"

using namespace chargepage;

namespace {

double residual_against(const SparseState& v, const SparseOperator& op,
                        double lambda) {
    return eigen_residual(op, v, lambda);
}

}  // namespace

TEST_CASE("bell_product_basis at N=1: the four Bell states") {
    // Population (1,0,0,0) is the singlet (|da ub> - |ua db>)/sqrt2,
    // i.e. amplitudes -1/sqrt2 at index 1 and +1/sqrt2 at index 2.
    auto singlet = bell_product_basis({{1, 0, 0, 0}}, 1);
    REQUIRE(singlet.size() == 1);
    REQUIRE(singlet[0].nnz() == 2);
    CHECK(singlet[0].amps[0].first == 1);
    CHECK(singlet[0].amps[0].second.real() == doctest::Approx(-1 / std::sqrt(2.0)));
    CHECK(singlet[0].amps[1].first == 2);
    CHECK(singlet[0].amps[1].second.real() == doctest::Approx(1 / std::sqrt(2.0)));

    // Each Bell state is a simultaneous C eigenvector with the tabulated
    // eigenvalues.
    const int expected[4][3] = {
        {-1, -1, -1}, {-1, 1, 1}, {1, -1, 1}, {1, 1, -1}};
    for (int k = 0; k < 4; ++k) {
        BellPopulation pop;
        pop.p[k] = 1;
        auto states = bell_product_basis(pop, 1);
        REQUIRE(states.size() == 1);
        for (int alpha = 1; alpha <= 3; ++alpha) {
            CHECK(residual_against(states[0], c_charge(alpha, 1).op,
                                   expected[k][alpha - 1]) < 1e-12);
        }
    }
}

TEST_CASE("bell_product_basis at N=4 population (1,1,1,1) yields 24 states") {
    auto states = bell_product_basis({{1, 1, 1, 1}}, 4);
    CHECK(states.size() == 24);
    for (const auto& s : states) {
        CHECK(s.nnz() == 16);  // 2^N amplitudes of modulus 2^{-N/2}
        for (const auto& [idx, amp] : s.amps)
            CHECK(std::abs(amp) == doctest::Approx(0.25));
    }
}

TEST_CASE("bell products are eigenvectors with halved-eigenvalue labels") {
    BellPopulation pop{{2, 1, 0, 1}};
    auto raw = pop.raw_eigenvalues();
    // (P3+P4-P1-P2)/2 etc., doubled back to raw eigenvalues.
    CHECK(raw[0] == (pop.p[2] + pop.p[3] - pop.p[0] - pop.p[1]));
    CHECK(raw[1] == (pop.p[1] + pop.p[3] - pop.p[0] - pop.p[2]));
    CHECK(raw[2] == (pop.p[1] + pop.p[2] - pop.p[0] - pop.p[3]));
    auto states = bell_product_basis(pop, 4);
    REQUIRE(states.size() == multinomial(4, {2, 1, 0, 1}));
    for (int alpha = 1; alpha <= 3; ++alpha)
        CHECK(residual_against(states[0], c_charge(alpha, 4).op,
                               raw[alpha - 1]) < 1e-12);
}

TEST_CASE("bell_product_basis population mismatch throws") {
    CHECK_THROWS_AS(bell_product_basis({{1, 1, 1, 1}}, 3), std::invalid_argument);
}

TEST_CASE("commuting microcanonical dimensions: 24 at N=4, 2520 at N=8") {
    CHECK(microcanonical_commuting(4).dim() == 24);
    CHECK(microcanonical_commuting(8).dim() == 2520);
    CHECK_THROWS_AS(microcanonical_commuting(6), sector_empty_error);
}

TEST_CASE("coupled_spin_basis: singlet of two spins") {
    auto basis = coupled_spin_basis(2, 0, 0);
    REQUIRE(basis.size() == 1);
    REQUIRE(basis[0].nnz() == 2);
    // (|up down> - |down up>)/sqrt2 up to overall sign.
    CHECK(basis[0].amps[0].first == 1);
    CHECK(basis[0].amps[1].first == 2);
    CHECK(basis[0].amps[0].second.real() ==
          doctest::Approx(-basis[0].amps[1].second.real()));
}

TEST_CASE("coupled_spin_basis counts match the Catalan triangle") {
    CHECK(coupled_spin_basis(4, 0, 0).size() == 2);
    CHECK(coupled_spin_basis(8, 2, 2).size() == 28);  // C_{5,3} = 28
    CHECK(coupled_spin_basis(6, 6, 0).size() == 1);
    // Inconsistent quantum numbers: flagged by an empty basis.
    CHECK(coupled_spin_basis(4, 1, 1).empty());
    CHECK(coupled_spin_basis(4, 2, 1).empty());
    CHECK(coupled_spin_basis(4, 6, 0).empty());
}

TEST_CASE("coupled_spin_basis vectors are (S^2, S_z) eigenvectors") {
    for (auto [n, s2, m2] : {std::array<int, 3>{4, 2, 0},
                             std::array<int, 3>{5, 3, -1},
                             std::array<int, 3>{6, 0, 0}}) {
        auto basis = coupled_spin_basis(n, s2, m2);
        REQUIRE(basis.size() == std::uint64_t(spin_multiplicity(n, s2)));
        SparseOperator s_sq = spin_squared_on_register(n);
        SparseOperator z_tot = pauli_total_on_register(Axis::Z, n);
        const double s_eig = s2 * (s2 + 2) / 4.0;
        for (const auto& v : basis) {
            CHECK(residual_against(v, s_sq, s_eig) < 1e-9);
            CHECK(residual_against(v, z_tot, m2) < 1e-9);
        }
        // Pairwise orthonormality.
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i; j < basis.size(); ++j) {
                cdouble g = inner_product(basis[i], basis[j]);
                CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-10);
            }
    }
}

TEST_CASE("coupled_spin_basis at n=8 cross-checked by dense diagonalization") {
    // Dense oracle: s = 1 multiplicity of the 2^8 register from the S^2
    // spectrum directly.
    Eigen::VectorXd vals = dense_spectrum(spin_squared_on_register(8));
    int s1_count = 0;
    for (Eigen::Index i = 0; i < vals.size(); ++i)
        if (std::abs(vals(i) - 2.0) < 1e-8) ++s1_count;
    // s=1 eigenspace dim = multiplicity * (2s+1) = 28 * 3.
    CHECK(s1_count == 84);
    CHECK(coupled_spin_basis(8, 2, 2).size() == 28);
}

TEST_CASE("noncommuting microcanonical: dims 32 (N=4) and 3584 (N=8)") {
    SectorBasis n4 = microcanonical_noncommuting(4);
    CHECK(n4.dim() == 32);
    SectorBasis n8 = microcanonical_noncommuting(8);
    CHECK(n8.dim() == 3584);
    CHECK_THROWS_AS(microcanonical_noncommuting(5), sector_empty_error);

    // Every basis vector is annihilated by all three global charges.
    for (int alpha = 1; alpha <= 3; ++alpha) {
        const SparseOperator& op = q_charge(alpha, 4).op;
        for (const auto& v : n4.vectors)
            CHECK(residual_against(v, op, 0.0) < 1e-9);
    }
}

TEST_CASE("amc_noncommuting dimensions") {
    CHECK(amc_noncommuting(2, 2, 2).dim() == 4);        // 1 * 2^2
    CHECK(amc_noncommuting(8, 2, 2).dim() == 7168);     // 28 * 2^8
    CHECK(amc_noncommuting(4, 4, 4).dim() == 16);       // unique maximal spin
    CHECK_THROWS_AS(amc_noncommuting(4, 1, 1), sector_empty_error);
    CHECK_THROWS_AS(amc_noncommuting(4, 2, 4), sector_empty_error);
}

TEST_CASE("commuting_sector: population solve and dimensions") {
    // Halved labels (0,-1,1) at N=8 are raw (0,-2,2): population (2,2,3,1),
    // dimensionality 1680.
    SectorBasis s = commuting_sector(8, 0, -2, 2);
    CHECK(s.dim() == 1680);
    // Halved (0,0,1) at N=8: no integer populations.
    CHECK(commuting_sector(8, 0, 0, 2).empty());
    // (0,0,0) at N=4 is the 24-state microcanonical sector.
    CHECK(commuting_sector(4, 0, 0, 0).dim() == 24);
}

TEST_CASE("amc_commuting_analog: N=8 s=m=1 union 4 x 1680 = 6720, matched") {
    AmcAnalogResult analog = amc_commuting_analog(8, 2, 2);
    CHECK(analog.basis.dim() == 6720);
    CHECK(analog.populations.size() == 4);
    CHECK(analog.matched);
    // p1 = p2 elementwise on both sides.
    for (const auto& [raw, prob] : analog.p_noncommuting[0].p)
        CHECK(prob ==
              doctest::Approx(analog.p_noncommuting[1].at_raw(raw)).epsilon(1e-9));
}

TEST_CASE("amc_commuting_analog: matched pairs from the reported list") {
    CHECK(amc_commuting_analog(4, 2, 2).matched);   // N=4, s=m=1
    CHECK(amc_commuting_analog(2, 2, 2).matched);   // N=2, s=m=N/2
    CHECK(amc_commuting_analog(8, 8, 8).matched);   // N=8, s=m=N/2
    // A non-AMC eigenspace: s=1, m=0 has no matching commuting union.
    CHECK_FALSE(amc_commuting_analog(4, 2, 0).matched);
}

TEST_CASE("outcome_distribution: microcanonical sector is a delta at 0") {
    SectorBasis n0 = microcanonical_noncommuting(4);
    OutcomeDistribution d = outcome_distribution(n0, q_charge(1, 4));
    CHECK(d.total() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(d.at_raw(0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("outcome_distribution equals Wigner-d values on (s,m) sectors") {
    struct Row {
        int s2, m2;
        std::vector<double> probs;  // over gamma = -s..s
    };
    // Reference outcome tables for q measurements on (s, m) eigenspaces.
    std::vector<Row> rows = {
        {2, 2, {0.25, 0.5, 0.25}},
        {4, 4, {0.0625, 0.25, 0.375, 0.25, 0.0625}},
        {4, 2, {0.25, 0.25, 0.0, 0.25, 0.25}},
    };
    for (const auto& row : rows) {
        const int n = row.s2;  // smallest lattice hosting this s
        SectorBasis sector = amc_noncommuting(n, row.s2, row.m2);
        OutcomeDistribution projector = outcome_distribution(sector, q_charge(1, n));
        OutcomeDistribution wigner = wigner_d_distribution(row.s2, row.m2);
        for (std::size_t i = 0; i < row.probs.size(); ++i) {
            int raw = -row.s2 + 2 * int(i);
            CHECK(projector.at_raw(raw) ==
                  doctest::Approx(row.probs[i]).epsilon(1e-9));
            CHECK(wigner.at_raw(raw) ==
                  doctest::Approx(row.probs[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("outcome distributions are independent of N") {
    OutcomeDistribution reference = wigner_d_distribution(2, 2);
    for (int n : {2, 4, 6}) {
        SectorBasis sector = amc_noncommuting(n, 2, 2);
        OutcomeDistribution d = outcome_distribution(sector, q_charge(1, n));
        for (const auto& [raw, prob] : reference.p)
            CHECK(d.at_raw(raw) == doctest::Approx(prob).epsilon(1e-9));
    }
}

TEST_CASE("p1 equals p2 elementwise on every (s,m) sector") {
    for (auto [n, s2, m2] : {std::array<int, 3>{4, 2, 0},
                             std::array<int, 3>{4, 4, 2},
                             std::array<int, 3>{6, 2, 2},
                             std::array<int, 3>{3, 1, 1}}) {
        SectorBasis sector = amc_noncommuting(n, s2, m2);
        OutcomeDistribution p1 = outcome_distribution(sector, q_charge(1, n));
        OutcomeDistribution p2 = outcome_distribution(sector, q_charge(2, n));
        for (const auto& [raw, prob] : p1.p)
            CHECK(p2.at_raw(raw) == doctest::Approx(prob).epsilon(1e-9));
    }
}

TEST_CASE("wigner_d_distribution: mirrored m gives mirrored probabilities") {
    OutcomeDistribution plus = wigner_d_distribution(3, 1);
    OutcomeDistribution minus = wigner_d_distribution(3, -1);
    for (const auto& [raw, prob] : plus.p)
        CHECK(minus.at_raw(-raw) == doctest::Approx(prob).epsilon(1e-12));
}

TEST_CASE("generic projector route agrees with counting on commuting sectors") {
    SectorBasis sector = commuting_sector(4, 0, -2, 2);  // population (1,1,2,0)
    REQUIRE_FALSE(sector.empty());
    for (int alpha = 1; alpha <= 3; ++alpha) {
        OutcomeDistribution d = outcome_distribution(sector, c_charge(alpha, 4));
        // Eigenvector basis: the distribution must be a delta at the label.
        std::array<int, 3> raw = BellPopulation{{1, 1, 2, 0}}.raw_eigenvalues();
        CHECK(d.at_raw(raw[alpha - 1]) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("single_charge_sector dimensions match across models and alphas") {
    CHECK(single_charge_sector(ChargeModel::noncommuting, 1, 4).dim() == 96);
    CHECK(single_charge_sector(ChargeModel::commuting, 1, 4).dim() == 96);
    CHECK(single_charge_sector(ChargeModel::noncommuting, 3, 2).dim() == 8);
    CHECK(single_charge_sector(ChargeModel::commuting, 2, 2).dim() == 8);

    // Eigenvalue-0 defining property.
    for (ChargeModel model : {ChargeModel::noncommuting, ChargeModel::commuting}) {
        for (int alpha : {1, 3}) {
            SectorBasis s = single_charge_sector(model, alpha, 2);
            const SparseOperator& op = make_charge(model, alpha, 2).op;
            for (const auto& v : s.vectors)
                CHECK(residual_against(v, op, 0.0) < 1e-9);
        }
    }
}

TEST_CASE("partial_constraint_check at N=4 against dense null spaces") {
    PartialConstraintReport report = partial_constraint_check(4);
    CHECK(report.dim_n0 == 32);
    CHECK(report.dim_c0 == 24);
    CHECK(report.dim_kernel_q1q2 == 32);
    CHECK(report.q_kernel_equals_n0);
    CHECK(report.c_kernel_strictly_larger);

    // Dense null-space-intersection oracle: dim ker(A) ^ ker(B) as the
    // number of zero eigenvalues of (B K)^dagger (B K) with K = ker(A).
    auto joint_kernel_dim = [](const Eigen::MatrixXcd& a,
                               const Eigen::MatrixXcd& b) {
        Eigen::MatrixXcd k = eigenspace(a, 0.0);
        Eigen::MatrixXcd bk = b * k;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            bk.adjoint() * bk, Eigen::EigenvaluesOnly);
        std::uint64_t dim = 0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            if (std::abs(es.eigenvalues()(i)) < 1e-8) ++dim;
        return dim;
    };
    std::uint64_t c_joint = joint_kernel_dim(to_dense_matrix(c_charge(1, 4).op),
                                             to_dense_matrix(c_charge(2, 4).op));
    CHECK(report.dim_kernel_c1c2 == c_joint);
    CHECK(c_joint > report.dim_c0);

    std::uint64_t q_joint = joint_kernel_dim(to_dense_matrix(q_charge(1, 4).op),
                                             to_dense_matrix(q_charge(2, 4).op));
    CHECK(q_joint == 32);
}

TEST_CASE("C3 expectation on ker C1 ^ ker C2 classes equals 2(P2 - P1)") {
    // Populations in the joint kernel have the form (p, q, q, p).
    for (int p = 0; p <= 2; ++p) {
        BellPopulation pop{{p, 2 - p, 2 - p, p}};
        auto raw = pop.raw_eigenvalues();
        CHECK(raw[0] == 0);
        CHECK(raw[1] == 0);
        CHECK(raw[2] == 2 * (pop.p[1] - pop.p[0]));
    }
}

TEST_CASE("sector bases pass the Gram orthonormality check") {
    CHECK(orthonormality_error(microcanonical_noncommuting(4)) < 1e-10);
    CHECK(orthonormality_error(microcanonical_commuting(4)) < 1e-10);
    CHECK(orthonormality_error(amc_noncommuting(6, 2, 0)) < 1e-10);
    CHECK(orthonormality_error(amc_commuting_analog(4, 2, 2).basis) < 1e-10);
    CHECK(orthonormality_error(single_charge_sector(ChargeModel::noncommuting, 3, 4)) <
          1e-10);
}

TEST_CASE("defining residuals stay below 1e-9") {
    CHECK(defining_residual(microcanonical_noncommuting(4)) < 1e-9);
    CHECK(defining_residual(microcanonical_commuting(4)) < 1e-9);
    CHECK(defining_residual(amc_noncommuting(4, 2, 2)) < 1e-9);
    CHECK(defining_residual(commuting_sector(4, 0, -2, 2)) < 1e-9);
    CHECK(defining_residual(single_charge_sector(ChargeModel::commuting, 1, 4)) <
          1e-9);
}

TEST_CASE("single-peak detection over the Wigner table") {
    // Exactly the s = m rows are single-peaked.
    for (int s2 = 2; s2 <= 8; s2 += 2) {
        for (int m2 = 0; m2 <= s2; m2 += 2) {
            OutcomeDistribution d = wigner_d_distribution(s2, m2);
            CHECK(d.single_peaked() == (m2 == s2));
        }
    }
}
