#include "chargepage/haar.hpp"

#include <cmath>
#include <stdexcept>

namespace chargepage {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr, std::uint32_t k0,
                         std::uint32_t k1) {
    const std::uint64_t p0 = std::uint64_t{kPhiloxM0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kPhiloxM1} * ctr[2];
    const std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
    const std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
    ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::uint64_t key, std::uint64_t draw,
                                        std::uint64_t stream) {
    std::array<std::uint32_t, 4> ctr = {
        std::uint32_t(draw), std::uint32_t(draw >> 32), std::uint32_t(stream),
        std::uint32_t(stream >> 32)};
    std::uint32_t k0 = std::uint32_t(key), k1 = std::uint32_t(key >> 32);
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k0 += kPhiloxW0;
            k1 += kPhiloxW1;
        }
        philox_round(ctr, k0, k1);
    }
    return ctr;
}

double philox_uniform(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = (std::uint64_t{hi} << 32) | lo;
    // 53 significant bits mapped to (0, 1] so the Box-Muller log is finite.
    return double((bits >> 11) + 1) * 0x1.0p-53;
}

cdouble complex_normal(std::uint64_t seed, std::uint64_t stream,
                       std::uint64_t draw) {
    const auto block = philox4x32(seed, draw, stream);
    const double u1 = philox_uniform(block[0], block[1]);
    const double u2 = philox_uniform(block[2], block[3]);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double g1 = radius * std::cos(kTwoPi * u2);
    const double g2 = radius * std::sin(kTwoPi * u2);
    return cdouble{g1, g2} * 0.70710678118654752440;
}

std::vector<cdouble> sample_coefficients(std::uint64_t dim,
                                         const SamplerConfig& cfg) {
    std::vector<cdouble> coeffs(dim);
    for (std::uint64_t l = 0; l < dim; ++l)
        coeffs[l] = complex_normal(cfg.master_seed, cfg.sample_index, l);
    return coeffs;
}

std::vector<cdouble> sample_state_dense(const SectorBasis& basis,
                                        const SamplerConfig& cfg) {
    if (basis.empty())
        throw std::invalid_argument("sample_state: empty sector");
    std::vector<cdouble> coeffs = sample_coefficients(basis.dim(), cfg);
    std::vector<cdouble> state(basis.ambient_dim, cdouble{0, 0});
    for (std::uint64_t l = 0; l < basis.dim(); ++l)
        accumulate(state, basis.vectors[l], coeffs[l]);
    double norm_sq = 0.0;
    for (const cdouble& amp : state) norm_sq += std::norm(amp);
    const double inv_norm = 1.0 / std::sqrt(norm_sq);
    for (cdouble& amp : state) amp *= inv_norm;
    return state;
}

SparseState sample_state(const SectorBasis& basis, const SamplerConfig& cfg) {
    return sparse_from_dense(sample_state_dense(basis, cfg));
}

Eigen::MatrixXcd haar_unitary(int dim, std::uint64_t seed) {
    Eigen::MatrixXcd gauss(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            gauss(r, c) = complex_normal(seed, std::uint64_t(r),
                                         std::uint64_t(c));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gauss);
    Eigen::MatrixXcd q = qr.householderQ();
    // Fix the R-diagonal phases so the distribution is exactly Haar.
    Eigen::VectorXcd diag = qr.matrixQR().diagonal();
    for (int c = 0; c < dim; ++c) {
        cdouble d = diag(c);
        q.col(c) *= (std::abs(d) == 0.0) ? cdouble{1, 0} : d / std::abs(d);
    }
    return q;
}

}  // namespace chargepage
