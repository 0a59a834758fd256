#include "chargepage/lattice.hpp"

#include <set>
#include <stdexcept>

namespace chargepage {

LatticeShape::LatticeShape(int n) : n_sites(n) {
    if (n < 1 || n > 12)
        throw std::invalid_argument("LatticeShape: n_sites must be in 1..12");
}

int LatticeShape::bit_of(int site, SiteQubit q) const {
    if (site < 0 || site >= n_sites)
        throw std::out_of_range("LatticeShape: site out of range");
    return 2 * site + (q == SiteQubit::a ? 1 : 0);
}

std::uint64_t LatticeShape::a_mask() const {
    std::uint64_t m = 0;
    for (int j = 0; j < n_sites; ++j) m |= mask_of(j, SiteQubit::a);
    return m;
}

std::uint64_t LatticeShape::b_mask() const {
    std::uint64_t m = 0;
    for (int j = 0; j < n_sites; ++j) m |= mask_of(j, SiteQubit::b);
    return m;
}

SparseState apply_pauli_string(const std::vector<PauliFactor>& factors,
                               const LatticeShape& shape,
                               const SparseState& state) {
    if (state.dim != shape.dim())
        throw std::invalid_argument("apply_pauli_string: state dimension mismatch");
    std::set<std::pair<int, int>> seen;
    std::uint64_t flip_mask = 0;
    std::vector<std::uint64_t> y_masks, z_masks;
    for (const auto& f : factors) {
        if (f.site < 0 || f.site >= shape.n_sites)
            throw std::out_of_range("apply_pauli_string: site out of range");
        if (!seen.insert({f.site, static_cast<int>(f.qubit)}).second)
            throw std::invalid_argument("apply_pauli_string: duplicate site/qubit");
        std::uint64_t m = shape.mask_of(f.site, f.qubit);
        switch (f.axis) {
            case Axis::X: flip_mask ^= m; break;
            case Axis::Y: flip_mask ^= m; y_masks.push_back(m); break;
            case Axis::Z: z_masks.push_back(m); break;
        }
    }

    SparseState out(state.dim);
    out.amps.reserve(state.amps.size());
    for (const auto& [idx, amp] : state.amps) {
        cdouble phase{1.0, 0.0};
        // Y|0> = i|1>, Y|1> = -i|0>; Z|x> = (-1)^x |x>.
        for (std::uint64_t m : y_masks)
            phase *= (idx & m) ? cdouble{0.0, -1.0} : cdouble{0.0, 1.0};
        for (std::uint64_t m : z_masks)
            if (idx & m) phase = -phase;
        out.amps.emplace_back(idx ^ flip_mask, phase * amp);
    }
    out.canonicalize();
    return out;
}

std::pair<std::uint64_t, std::uint64_t> bipartition_split(std::uint64_t index,
                                                          int n_a,
                                                          int n_sites) {
    if (n_a < 0 || n_a > n_sites)
        throw std::out_of_range("bipartition_split: n_a out of range");
    if (index >= (std::uint64_t{1} << (2 * n_sites)))
        throw std::out_of_range("bipartition_split: index out of range");
    std::uint64_t row_mask = (std::uint64_t{1} << (2 * n_a)) - 1;
    return {index & row_mask, index >> (2 * n_a)};
}

std::uint64_t bipartition_join(std::uint64_t row, std::uint64_t col, int n_a,
                               int n_sites) {
    if (n_a < 0 || n_a > n_sites)
        throw std::out_of_range("bipartition_join: n_a out of range");
    return row | (col << (2 * n_a));
}

std::uint64_t interleave_ab(std::uint64_t a_index, std::uint64_t b_index,
                            int n_sites) {
    std::uint64_t out = 0;
    for (int j = 0; j < n_sites; ++j) {
        out |= ((a_index >> j) & 1u) << (2 * j + 1);
        out |= ((b_index >> j) & 1u) << (2 * j);
    }
    return out;
}

std::uint64_t extract_a_bits(std::uint64_t index, int n_sites) {
    std::uint64_t out = 0;
    for (int j = 0; j < n_sites; ++j) out |= ((index >> (2 * j + 1)) & 1u) << j;
    return out;
}

std::uint64_t extract_b_bits(std::uint64_t index, int n_sites) {
    std::uint64_t out = 0;
    for (int j = 0; j < n_sites; ++j) out |= ((index >> (2 * j)) & 1u) << j;
    return out;
}

}  // namespace chargepage
