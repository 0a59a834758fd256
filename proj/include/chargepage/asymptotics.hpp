/*
 * Closed-form and exact-combinatorial formulas: the Catalan triangle, the
 * unconstrained Page curve (approximate and exact), the exact state-counting
 * sums for both microcanonical subspaces, their O(1/N) closed-form
 * approximations, and the additivity ansatz.
 *
 * Half-integer spin quantum numbers are passed as twice their value
 * (s2 = 2s) so every argument stays an exact integer.
 */
#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "chargepage/charges.hpp"

namespace chargepage {

using uint128 = unsigned __int128;

std::string to_string(uint128 v);

// Catalan's triangle C_{a,b} = ((a-b+1)/(a+1)) * binom(a+b, b), a >= b >= 0.
// Exact 128-bit arithmetic (valid through a + b = 128); throws on a < b.
uint128 catalan(int a, int b);
double catalan_as_double(int a, int b);
double log_catalan(int a, int b);  // via lgamma, for large arguments

// Multiplicity of total spin s (s2 = 2s) among n spin-1/2's:
// C_{n/2+s, n/2-s}; zero when s2 > n or parity mismatches.
uint128 spin_multiplicity(int n, int s2);
double log_spin_multiplicity(int n, int s2);

std::uint64_t multinomial(int n, const std::array<int, 4>& parts);
double log_multinomial(int n, const std::array<int, 4>& parts);

// Unconstrained Page curve, leading approximation:
// N_A log d - d^{N_A - N_B} / 2, for N_A <= N_B.
double unconstrained_page(int n_a, int n_b, int d = 4);

// Exact Haar average for an m x n bipartition (m = d^{N_A} <= n = d^{N_B}):
// sum_{k=n+1}^{mn} 1/k - (m-1)/(2n).
double exact_page_average(int n_a, int n_b, int d = 4);

enum class CountingMethod { exact_sum, closed_form };

struct CountingTermResult {
    double nats;
    CountingMethod method;
    ChargeModel model;
    int n;
    int n_a;
};

// Entropy of the reduced maximally mixed sector state, evaluated from the
// exact combinatorial sums (log-gamma arithmetic, stable through N ~ 128).
CountingTermResult exact_counting_commuting(int n, int n_a);     // N = 0 mod 4
CountingTermResult exact_counting_noncommuting(int n, int n_a);  // N even

// O(1/N) closed form: L + 3N_A/(4N^2) + sigma * N_A^2/(2 N^2 N_B), with
// L = N_A log 4 - (3/2) log(N/N_B) + 3N_A/(2N) and sigma = +1 for the
// noncommuting model, -1 for the commuting one. Requires N_A, N_B >= 1.
CountingTermResult closed_form_counting(ChargeModel model, int n, int n_a);

// Predicted curve when each of the three charges lowers the Page curve by
// the same amount as a single charge does.
double additivity_ansatz(double unconstrained_baseline, double single_charge_mean);

}  // namespace chargepage
