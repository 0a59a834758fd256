#include "chargepage/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <Eigen/SVD>

#include "chargepage/haar.hpp"

namespace chargepage {

namespace {

constexpr double kSpectrumFloor = 1e-14;

double entropy_from_schmidt_weights(const Eigen::VectorXd& weights) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
        double w = weights(i);
        if (w > kSpectrumFloor) s -= w * std::log(w);
    }
    return s;
}

}  // namespace

double entanglement_entropy(std::span<const cdouble> state, int n_a,
                            int n_sites) {
    if (n_a < 0 || n_a > n_sites)
        throw std::out_of_range("entanglement_entropy: n_a out of range");
    const std::uint64_t dim = std::uint64_t{1} << (2 * n_sites);
    if (state.size() != dim)
        throw std::invalid_argument("entanglement_entropy: state size mismatch");
    double norm_sq = 0.0;
    for (const cdouble& amp : state) norm_sq += std::norm(amp);
    if (std::abs(norm_sq - 1.0) > 1e-8)
        throw std::invalid_argument("entanglement_entropy: state not normalized");
    if (n_a == 0 || n_a == n_sites) return 0.0;

    const Eigen::Index rows = Eigen::Index(1) << (2 * n_a);
    const Eigen::Index cols = Eigen::Index(1) << (2 * (n_sites - n_a));
    // The amplitude layout (subsystem A in the low bits) is exactly the
    // column-major 4^{N_A} x 4^{N_B} reshape.
    Eigen::Map<const Eigen::MatrixXcd> reshaped(state.data(), rows, cols);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(reshaped);
    Eigen::VectorXd weights = svd.singularValues();
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
        double sigma = weights(i) < kSpectrumFloor ? 0.0 : weights(i);
        weights(i) = sigma * sigma;
    }
    return entropy_from_schmidt_weights(weights);
}

double entanglement_entropy(const SparseState& state, int n_a, int n_sites) {
    return entanglement_entropy(state.to_dense(), n_a, n_sites);
}

Eigen::MatrixXcd reduced_density(std::span<const cdouble> state, int n_a,
                                 int n_sites) {
    const Eigen::Index rows = Eigen::Index(1) << (2 * n_a);
    const Eigen::Index cols = Eigen::Index(1) << (2 * (n_sites - n_a));
    if (state.size() != std::uint64_t(rows) * std::uint64_t(cols))
        throw std::invalid_argument("reduced_density: state size mismatch");
    Eigen::Map<const Eigen::MatrixXcd> reshaped(state.data(), rows, cols);
    return reshaped * reshaped.adjoint();
}

double state_counting_entropy(const SectorBasis& basis, int n_a) {
    if (basis.empty())
        throw std::invalid_argument("state_counting_entropy: empty sector");
    const int n = basis.label.n_sites;
    if (n_a < 0 || n_a > n)
        throw std::out_of_range("state_counting_entropy: n_a out of range");
    if (n_a > 6)
        throw std::invalid_argument(
            "state_counting_entropy: dense rho_A limited to n_a <= 6");
    if (n_a == 0) return 0.0;

    const Eigen::Index rows = Eigen::Index(1) << (2 * n_a);
    const std::uint64_t row_mask = (std::uint64_t{1} << (2 * n_a)) - 1;
    const std::int64_t count = static_cast<std::int64_t>(basis.dim());

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(rows, rows);
#ifdef _OPENMP
#pragma omp parallel
    {
        Eigen::MatrixXcd local = Eigen::MatrixXcd::Zero(rows, rows);
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t l = 0; l < count; ++l) {
            const auto& amps = basis.vectors[l].amps;
            // rho_A += M M^dagger restricted to matching B columns.
            for (std::size_t i = 0; i < amps.size(); ++i) {
                const std::uint64_t col_i = amps[i].first >> (2 * n_a);
                for (std::size_t j = i; j < amps.size(); ++j) {
                    if ((amps[j].first >> (2 * n_a)) != col_i) continue;
                    local(Eigen::Index(amps[i].first & row_mask),
                          Eigen::Index(amps[j].first & row_mask)) +=
                        amps[i].second * std::conj(amps[j].second);
                }
            }
        }
#pragma omp critical
        rho += local;
    }
#else
    for (std::int64_t l = 0; l < count; ++l) {
        const auto& amps = basis.vectors[l].amps;
        for (std::size_t i = 0; i < amps.size(); ++i) {
            const std::uint64_t col_i = amps[i].first >> (2 * n_a);
            for (std::size_t j = i; j < amps.size(); ++j) {
                if ((amps[j].first >> (2 * n_a)) != col_i) continue;
                rho(Eigen::Index(amps[i].first & row_mask),
                    Eigen::Index(amps[j].first & row_mask)) +=
                    amps[i].second * std::conj(amps[j].second);
            }
        }
    }
#endif
    // Only the upper triangle was filled; mirror and normalize.
    Eigen::MatrixXcd full = rho + rho.adjoint();
    full.diagonal() -= rho.diagonal().real().cast<cdouble>();
    full /= double(count);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(full,
                                                       Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double w = es.eigenvalues()(i);
        if (w > kSpectrumFloor) s -= w * std::log(w);
    }
    return s;
}

const PageCurvePoint& PageCurveEstimate::at(int n_a) const {
    for (const auto& pt : points)
        if (pt.n_a == n_a) return pt;
    throw std::out_of_range("PageCurveEstimate: no record for this n_a");
}

PageCurveEstimate estimate_page_curve(const SectorBasis& basis,
                                      const std::vector<int>& n_a_list,
                                      std::uint64_t samples, std::uint64_t seed,
                                      Execution exec) {
    if (basis.empty())
        throw std::invalid_argument("estimate_page_curve: empty sector");
    if (samples == 0)
        throw std::invalid_argument("estimate_page_curve: need at least one sample");
    const int n = basis.label.n_sites;
    for (int n_a : n_a_list)
        if (n_a < 0 || n_a > n)
            throw std::out_of_range("estimate_page_curve: n_a out of range");

    const std::size_t cuts = n_a_list.size();
    std::vector<double> entropies(samples * cuts);

    const std::int64_t total = static_cast<std::int64_t>(samples);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
#endif
    for (std::int64_t k = 0; k < total; ++k) {
        std::vector<cdouble> state =
            sample_state_dense(basis, {seed, std::uint64_t(k)});
        for (std::size_t c = 0; c < cuts; ++c)
            entropies[std::size_t(k) * cuts + c] =
                entanglement_entropy(state, n_a_list[c], n);
    }

    PageCurveEstimate est;
    est.label = basis.label;
    est.seed = seed;
    est.low_sample_warning = samples < 100;
    for (std::size_t c = 0; c < cuts; ++c) {
        double mean = 0.0;
        for (std::uint64_t k = 0; k < samples; ++k)
            mean += entropies[k * cuts + c];
        mean /= double(samples);
        double var = 0.0;
        for (std::uint64_t k = 0; k < samples; ++k) {
            double d = entropies[k * cuts + c] - mean;
            var += d * d;
        }
        double stderr_nats =
            samples > 1 ? std::sqrt(var / double(samples - 1) / double(samples))
                        : 0.0;
        est.points.push_back({n_a_list[c], mean, stderr_nats, samples});
    }
    return est;
}

}  // namespace chargepage
