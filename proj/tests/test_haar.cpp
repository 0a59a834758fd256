#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "chargepage/entropy.hpp"
#include "chargepage/haar.hpp"
#include "chargepage/sectors.hpp"

using namespace chargepage;

TEST_CASE("Philox4x32-10 known-answer vectors") {
    // Reference vectors from the generator's published test suite.
    {
        auto out = philox4x32(0, 0, 0);
        CHECK(out[0] == 0x6627e8d5u);
        CHECK(out[1] == 0xe169c58du);
        CHECK(out[2] == 0xbc57ac4cu);
        CHECK(out[3] == 0x9b00dbd8u);
    }
    {
        // All-ones counter and key.
        auto out = philox4x32(~std::uint64_t{0}, ~std::uint64_t{0},
                              ~std::uint64_t{0});
        CHECK(out[0] == 0x408f276du);
        CHECK(out[1] == 0x41c83b0eu);
        CHECK(out[2] == 0xa20bc7c6u);
        CHECK(out[3] == 0x6d5451fdu);
    }
    {
        // Pi-digit counter/key pattern.
        std::uint64_t draw = (std::uint64_t{0x85a308d3u} << 32) | 0x243f6a88u;
        std::uint64_t stream = (std::uint64_t{0x03707344u} << 32) | 0x13198a2eu;
        std::uint64_t key = (std::uint64_t{0x299f31d0u} << 32) | 0xa4093822u;
        auto out = philox4x32(key, draw, stream);
        CHECK(out[0] == 0xd16cfe09u);
        CHECK(out[1] == 0x94fdccebu);
        CHECK(out[2] == 0x5001e420u);
        CHECK(out[3] == 0x24126ea1u);
    }
}

TEST_CASE("uniform mapping lands in (0, 1]") {
    CHECK(philox_uniform(0, 0) > 0.0);
    CHECK(philox_uniform(0xffffffffu, 0xffffffffu) <= 1.0);
}

TEST_CASE("complex normal moments") {
    const int n = 200000;
    double mean_re = 0, mean_im = 0, second = 0;
    for (int i = 0; i < n; ++i) {
        cdouble c = complex_normal(42, 0, std::uint64_t(i));
        mean_re += c.real();
        mean_im += c.imag();
        second += std::norm(c);
    }
    mean_re /= n;
    mean_im /= n;
    second /= n;
    CHECK(std::abs(mean_re) < 0.01);
    CHECK(std::abs(mean_im) < 0.01);
    CHECK(second == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("two calls with equal (seed, index) are bitwise identical") {
    SectorBasis sector = microcanonical_noncommuting(2);
    SparseState a = sample_state(sector, {123, 7});
    SparseState b = sample_state(sector, {123, 7});
    REQUIRE(a.nnz() == b.nnz());
    for (std::size_t i = 0; i < a.nnz(); ++i) {
        CHECK(a.amps[i].first == b.amps[i].first);
        CHECK(a.amps[i].second.real() == b.amps[i].second.real());
        CHECK(a.amps[i].second.imag() == b.amps[i].second.imag());
    }
    SparseState c = sample_state(sector, {123, 8});
    bool differs = c.nnz() != a.nnz();
    for (std::size_t i = 0; !differs && i < a.nnz(); ++i)
        differs = c.amps[i].second != a.amps[i].second;
    CHECK(differs);
}

TEST_CASE("dim-1 sector sample is the basis vector times a unit phase") {
    SectorBasis sector = amc_noncommuting(2, 2, 2);  // a part |up up>, one b
    // Restrict to a single basis vector to get a one-dimensional sector.
    SectorBasis one;
    one.label = sector.label;
    one.ambient_dim = sector.ambient_dim;
    one.vectors.push_back(sector.vectors.front());
    SparseState sample = sample_state(one, {5, 0});
    REQUIRE(sample.nnz() == one.vectors[0].nnz());
    cdouble ratio{0, 0};
    for (std::size_t i = 0; i < sample.nnz(); ++i) {
        cdouble r = sample.amps[i].second / one.vectors[0].amps[i].second;
        if (i == 0)
            ratio = r;
        else
            CHECK(std::abs(r - ratio) < 1e-12);
    }
    CHECK(std::abs(std::abs(ratio) - 1.0) < 1e-12);
}

TEST_CASE("every sample has unit norm to 1e-12") {
    SectorBasis sector = microcanonical_commuting(4);
    for (int k = 0; k < 50; ++k) {
        SparseState s = sample_state(sector, {99, std::uint64_t(k)});
        CHECK(std::abs(s.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("mean overlap with one basis vector is 1/D") {
    // E |<psi_1|psi>|^2 = 1/D for Haar states; overlap^2 is Beta(1, D-1)
    // distributed, so compare against three sampling standard deviations.
    SectorBasis sector = single_charge_sector(ChargeModel::noncommuting, 3, 2);
    const double dim = double(sector.dim());
    REQUIRE(sector.dim() == 8);
    const int samples = 10000;
    double mean = 0.0;
    for (int k = 0; k < samples; ++k) {
        std::vector<cdouble> coeffs =
            sample_coefficients(sector.dim(), {2024, std::uint64_t(k)});
        double norm_sq = 0.0;
        for (const cdouble& c : coeffs) norm_sq += std::norm(c);
        mean += std::norm(coeffs[0]) / norm_sq;
    }
    mean /= samples;
    const double variance =
        (dim - 1.0) / (dim * dim * (dim + 1.0));  // Var of Beta(1, D-1)
    const double tol = 3.0 * std::sqrt(variance / samples);
    CHECK(std::abs(mean - 1.0 / dim) < tol);
}

TEST_CASE("Haar invariance: overlap distribution unchanged by a fixed unitary") {
    // Two-sample Kolmogorov-Smirnov between |<phi|psi>|^2 and |<phi|U psi>|^2
    // at the 1% critical value.
    SectorBasis sector = microcanonical_noncommuting(2);
    const int dim = int(sector.dim());
    REQUIRE(dim == 4);
    Eigen::MatrixXcd u = haar_unitary(dim, 777);
    CHECK((u * u.adjoint() - Eigen::MatrixXcd::Identity(dim, dim))
              .cwiseAbs()
              .maxCoeff() < 1e-12);

    const int samples = 10000;
    std::vector<double> base(samples), rotated(samples);
    for (int k = 0; k < samples; ++k) {
        std::vector<cdouble> c = sample_coefficients(dim, {31337, std::uint64_t(k)});
        Eigen::Map<Eigen::VectorXcd> cv(c.data(), dim);
        double norm_sq = cv.squaredNorm();
        base[k] = std::norm(cv(0)) / norm_sq;
        Eigen::VectorXcd uc = u * cv;
        rotated[k] = std::norm(uc(0)) / norm_sq;
    }
    std::sort(base.begin(), base.end());
    std::sort(rotated.begin(), rotated.end());
    double ks = 0.0;
    std::size_t i = 0, j = 0;
    while (i < base.size() && j < rotated.size()) {
        if (base[i] <= rotated[j])
            ++i;
        else
            ++j;
        ks = std::max(ks, std::abs(double(i) - double(j)) / samples);
    }
    const double critical = 1.628 * std::sqrt(2.0 / samples);  // alpha = 0.01
    CHECK(ks < critical);
}

TEST_CASE("empty sector is rejected") {
    SectorBasis empty;
    empty.label.n_sites = 2;
    empty.ambient_dim = 16;
    CHECK_THROWS_AS(sample_state(empty, {1, 0}), std::invalid_argument);
}
