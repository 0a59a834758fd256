#include "chargepage/asymptotics.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace chargepage {

namespace {

constexpr int kTriangleMax = 129;  // supports a + b <= 128 within 128 bits

// Additive Pascal-like recurrence keeps everything overflow-safe:
// C_{a,0} = 1, C_{a,b} = C_{a,b-1} + C_{a-1,b} (second term absent at b = a).
const std::vector<std::vector<uint128>>& triangle() {
    static std::vector<std::vector<uint128>> table = [] {
        std::vector<std::vector<uint128>> t(kTriangleMax + 1);
        for (int a = 0; a <= kTriangleMax; ++a) {
            t[a].resize(a + 1);
            t[a][0] = 1;
            for (int b = 1; b <= a; ++b)
                t[a][b] = t[a][b - 1] + (b <= a - 1 ? t[a - 1][b] : uint128{0});
        }
        return t;
    }();
    return table;
}

double lbinom(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

std::string to_string(uint128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.insert(s.begin(), static_cast<char>('0' + int(v % 10)));
        v /= 10;
    }
    return s;
}

uint128 catalan(int a, int b) {
    if (b < 0 || a < b) throw std::invalid_argument("catalan: requires a >= b >= 0");
    if (a > kTriangleMax) throw std::invalid_argument("catalan: argument too large");
    return triangle()[a][b];
}

double catalan_as_double(int a, int b) {
    uint128 v = catalan(a, b);
    double out = 0.0;
    double scale = 1.0;
    while (v > 0) {
        out += scale * double(std::uint64_t(v % 1000000000ull));
        scale *= 1e9;
        v /= 1000000000ull;
    }
    return out;
}

double log_catalan(int a, int b) {
    if (b < 0 || a < b) throw std::invalid_argument("log_catalan: requires a >= b >= 0");
    if (a == b) return lbinom(a + b, b) - std::log(a + 1.0);
    return std::log(double(a - b + 1)) - std::log(double(a + 1)) + lbinom(a + b, b);
}

uint128 spin_multiplicity(int n, int s2) {
    if (s2 < 0 || s2 > n || (n - s2) % 2 != 0) return 0;
    return catalan((n + s2) / 2, (n - s2) / 2);
}

double log_spin_multiplicity(int n, int s2) {
    if (s2 < 0 || s2 > n || (n - s2) % 2 != 0)
        throw std::invalid_argument("log_spin_multiplicity: invalid quantum numbers");
    return log_catalan((n + s2) / 2, (n - s2) / 2);
}

std::uint64_t multinomial(int n, const std::array<int, 4>& parts) {
    int total = 0;
    for (int p : parts) {
        if (p < 0) throw std::invalid_argument("multinomial: negative part");
        total += p;
    }
    if (total != n) throw std::invalid_argument("multinomial: parts must sum to n");
    // n <= 20 keeps the product exact in 64 bits for all uses here.
    std::uint64_t out = 1;
    int consumed = 0;
    for (int p : parts) {
        for (int i = 1; i <= p; ++i) {
            out = out * std::uint64_t(consumed + i) / std::uint64_t(i);
        }
        consumed += p;
    }
    return out;
}

double log_multinomial(int n, const std::array<int, 4>& parts) {
    double out = std::lgamma(n + 1.0);
    int total = 0;
    for (int p : parts) {
        if (p < 0) throw std::invalid_argument("log_multinomial: negative part");
        out -= std::lgamma(p + 1.0);
        total += p;
    }
    if (total != n) throw std::invalid_argument("log_multinomial: parts must sum to n");
    return out;
}

double unconstrained_page(int n_a, int n_b, int d) {
    if (n_a > n_b)
        throw std::invalid_argument("unconstrained_page: requires N_A <= N_B");
    return n_a * std::log(double(d)) -
           0.5 * std::pow(double(d), double(n_a - n_b));
}

double exact_page_average(int n_a, int n_b, int d) {
    if (n_a > n_b)
        throw std::invalid_argument("exact_page_average: requires N_A <= N_B");
    const double m = std::pow(double(d), n_a);
    const double n = std::pow(double(d), n_b);
    if (m * n > 5e8)
        throw std::invalid_argument("exact_page_average: dimension too large");
    const std::uint64_t lo = std::uint64_t(n), hi = std::uint64_t(m * n);
    double harmonic = 0.0;
    for (std::uint64_t k = hi; k > lo; --k) harmonic += 1.0 / double(k);
    return harmonic - (m - 1.0) / (2.0 * n);
}

CountingTermResult exact_counting_commuting(int n, int n_a) {
    if (n % 4 != 0)
        throw std::invalid_argument("exact_counting_commuting: N must be a multiple of 4");
    if (n_a < 0 || n_a > n)
        throw std::invalid_argument("exact_counting_commuting: N_A out of range");
    const int n_b = n - n_a;
    const int quarter = n / 4;
    const double log_dim =
        log_multinomial(n, {quarter, quarter, quarter, quarter});

    double entropy = 0.0;
    for (int a1 = 0; a1 <= std::min(n_a, quarter); ++a1) {
        for (int a2 = 0; a2 + a1 <= n_a && a2 <= quarter; ++a2) {
            for (int a3 = 0; a3 + a2 + a1 <= n_a && a3 <= quarter; ++a3) {
                int a4 = n_a - a1 - a2 - a3;
                if (a4 < 0 || a4 > quarter) continue;
                std::array<int, 4> a{a1, a2, a3, a4};
                std::array<int, 4> b{quarter - a1, quarter - a2, quarter - a3,
                                     quarter - a4};
                double log_wa = log_multinomial(n_a, a);
                double log_wb = log_multinomial(n_b, b);
                // Eigenvalue of the reduced state on this population block is
                // wb / dim, with multiplicity wa.
                double log_eig = log_wb - log_dim;
                entropy -= std::exp(log_wa + log_eig) * log_eig;
            }
        }
    }
    return {entropy, CountingMethod::exact_sum, ChargeModel::commuting, n, n_a};
}

CountingTermResult exact_counting_noncommuting(int n, int n_a) {
    if (n % 2 != 0)
        throw std::invalid_argument("exact_counting_noncommuting: N must be even");
    if (n_a < 0 || n_a > n)
        throw std::invalid_argument("exact_counting_noncommuting: N_A out of range");
    const int n_b = n - n_a;
    const double log_dim = log_catalan(n / 2, n / 2);

    // s_A runs over integers (N_A even) or half-integers (N_A odd); s_B = s_A,
    // which caps the sum at min(N_A, N_B).
    double a_entropy = 0.0;
    for (int s2 = n_a % 2; s2 <= std::min(n_a, n_b); s2 += 2) {
        double log_da = log_spin_multiplicity(n_a, s2);
        double log_db = log_spin_multiplicity(n_b, s2);
        double weight = std::exp(log_da + log_db - log_dim);
        // Reduced-state eigenvalue d_B / (D (2s_A + 1)), multiplicity
        // d_A (2s_A + 1).
        double log_eig = log_db - log_dim - std::log(s2 + 1.0);
        a_entropy -= weight * log_eig;
    }
    const double entropy = n_a * std::log(2.0) + a_entropy;
    return {entropy, CountingMethod::exact_sum, ChargeModel::noncommuting, n, n_a};
}

CountingTermResult closed_form_counting(ChargeModel model, int n, int n_a) {
    const int n_b = n - n_a;
    if (n_a < 1 || n_b < 1)
        throw std::invalid_argument("closed_form_counting: requires N_A, N_B >= 1");
    const double N = n, NA = n_a, NB = n_b;
    const double leading =
        NA * std::log(4.0) - 1.5 * std::log(N / NB) + 1.5 * NA / N;
    const double sigma = model == ChargeModel::noncommuting ? 1.0 : -1.0;
    const double value =
        leading + 0.75 * NA / (N * N) + sigma * NA * NA / (2.0 * N * N * NB);
    return {value, CountingMethod::closed_form, model, n, n_a};
}

double additivity_ansatz(double unconstrained_baseline, double single_charge_mean) {
    return unconstrained_baseline -
           3.0 * (unconstrained_baseline - single_charge_mean);
}

}  // namespace chargepage
