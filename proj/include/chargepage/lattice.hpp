/*
 * Lattice indexing for N sites of two qubits each (one 4-level qudit per
 * site), Pauli-string application, and the bipartition reshape.
 *
 * Bit layout (the one fixed contract everything else relies on):
 *   - Global basis index i in [0, 4^N).
 *   - Site j occupies bits 2j and 2j+1 of i.
 *   - Bit 2j   = qubit b of site j.
 *   - Bit 2j+1 = qubit a of site j.
 *   - Bit value 0 means spin up (Z eigenvalue +1), 1 means spin down.
 *   So the site-local value v = (i >> 2j) & 3 equals 2*a + b, and e.g.
 *   Z_a (x) 1_b on one site has diagonal (+1, +1, -1, -1).
 *
 * Subsystem A is always the first N_A sites (the low 2*N_A bits).
 */
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "chargepage/sparse.hpp"

namespace chargepage {

enum class SiteQubit : int { a = 0, b = 1 };
enum class Axis : int { X = 1, Y = 2, Z = 3 };

struct LatticeShape {
    int n_sites = 0;
    static constexpr int local_dim = 4;

    explicit LatticeShape(int n);

    std::uint64_t dim() const { return std::uint64_t{1} << (2 * n_sites); }

    // Global bit position of a site's qubit.
    int bit_of(int site, SiteQubit q) const;
    std::uint64_t mask_of(int site, SiteQubit q) const {
        return std::uint64_t{1} << bit_of(site, q);
    }
    // Mask selecting every a-qubit bit (odd positions) or b-qubit bit.
    std::uint64_t a_mask() const;
    std::uint64_t b_mask() const;

    int site_value(std::uint64_t index, int site) const {
        return static_cast<int>((index >> (2 * site)) & 3u);
    }
};

struct PauliFactor {
    int site;
    SiteQubit qubit;
    Axis axis;
};

// Applies the product of single-qubit Paulis to `state`. Factors must name
// distinct (site, qubit) slots within 0..N-1.
SparseState apply_pauli_string(const std::vector<PauliFactor>& factors,
                               const LatticeShape& shape,
                               const SparseState& state);

// Splits a global basis index into (row over 4^{n_a}, col over 4^{N-n_a});
// sites 0..n_a-1 form subsystem A. Bijective; see bipartition_join.
std::pair<std::uint64_t, std::uint64_t> bipartition_split(std::uint64_t index,
                                                          int n_a, int n_sites);
std::uint64_t bipartition_join(std::uint64_t row, std::uint64_t col, int n_a,
                               int n_sites);

// Index helpers for the a-qubit factor (2^N) used by the spin-sector code:
// a-factor index alpha has bit j = a-qubit of site j, b-factor likewise.
std::uint64_t interleave_ab(std::uint64_t a_index, std::uint64_t b_index,
                            int n_sites);
std::uint64_t extract_a_bits(std::uint64_t index, int n_sites);
std::uint64_t extract_b_bits(std::uint64_t index, int n_sites);

}  // namespace chargepage
