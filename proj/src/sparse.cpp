#include "chargepage/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chargepage {

double SparseState::norm_sq() const {
    double n = 0.0;
    for (const auto& [idx, amp] : amps) n += std::norm(amp);
    return n;
}

double SparseState::norm() const { return std::sqrt(norm_sq()); }

void SparseState::normalize() {
    double n = norm();
    if (n == 0.0) throw std::invalid_argument("SparseState: cannot normalize zero vector");
    for (auto& [idx, amp] : amps) amp /= n;
}

void SparseState::canonicalize(double prune) {
    std::sort(amps.begin(), amps.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<std::uint64_t, cdouble>> merged;
    merged.reserve(amps.size());
    for (const auto& [idx, amp] : amps) {
        if (!merged.empty() && merged.back().first == idx)
            merged.back().second += amp;
        else
            merged.emplace_back(idx, amp);
    }
    amps.clear();
    for (const auto& [idx, amp] : merged)
        if (std::abs(amp) > prune) amps.emplace_back(idx, amp);
}

bool SparseState::is_canonical() const {
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (amps[i].first >= dim) return false;
        if (i > 0 && amps[i].first <= amps[i - 1].first) return false;
    }
    return true;
}

std::vector<cdouble> SparseState::to_dense() const {
    std::vector<cdouble> dense(dim, cdouble{0.0, 0.0});
    for (const auto& [idx, amp] : amps) dense[idx] += amp;
    return dense;
}

SparseState sparse_from_dense(std::span<const cdouble> dense, double prune) {
    SparseState s(dense.size());
    for (std::uint64_t i = 0; i < dense.size(); ++i)
        if (std::abs(dense[i]) > prune) s.amps.emplace_back(i, dense[i]);
    return s;
}

void accumulate(std::vector<cdouble>& dense, const SparseState& state,
                cdouble coeff) {
    for (const auto& [idx, amp] : state.amps) dense[idx] += coeff * amp;
}

cdouble inner_product(const SparseState& a, const SparseState& b) {
    if (a.dim != b.dim)
        throw std::invalid_argument("inner_product: dimension mismatch");
    cdouble acc{0.0, 0.0};
    std::size_t i = 0, j = 0;
    while (i < a.amps.size() && j < b.amps.size()) {
        if (a.amps[i].first < b.amps[j].first)
            ++i;
        else if (a.amps[i].first > b.amps[j].first)
            ++j;
        else
            acc += std::conj(a.amps[i++].second) * b.amps[j++].second;
    }
    return acc;
}

void SparseOperator::add_entry(std::uint64_t row, std::uint64_t col,
                               cdouble value) {
    rows.at(row).emplace_back(col, value);
}

void SparseOperator::canonicalize(double prune) {
    for (auto& row : rows) {
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<std::uint64_t, cdouble>> merged;
        merged.reserve(row.size());
        for (const auto& [col, val] : row) {
            if (!merged.empty() && merged.back().first == col)
                merged.back().second += val;
            else
                merged.emplace_back(col, val);
        }
        row.clear();
        for (const auto& [col, val] : merged)
            if (std::abs(val) > prune) row.emplace_back(col, val);
    }
}

std::size_t SparseOperator::nnz() const {
    std::size_t n = 0;
    for (const auto& row : rows) n += row.size();
    return n;
}

std::size_t SparseOperator::max_row_nnz() const {
    std::size_t n = 0;
    for (const auto& row : rows) n = std::max(n, row.size());
    return n;
}

void SparseOperator::apply(std::span<const cdouble> in,
                           std::span<cdouble> out) const {
    if (in.size() != dim || out.size() != dim)
        throw std::invalid_argument("SparseOperator::apply: size mismatch");
    for (std::uint64_t r = 0; r < dim; ++r) {
        cdouble acc{0.0, 0.0};
        for (const auto& [c, v] : rows[r]) acc += v * in[c];
        out[r] = acc;
    }
}

SparseState SparseOperator::apply(const SparseState& in, double prune) const {
    if (in.dim != dim)
        throw std::invalid_argument("SparseOperator::apply: dimension mismatch");
    // Column access via gather over rows would be quadratic; go through a
    // dense scratch vector instead. Dimensions here are at most 4^10.
    std::vector<cdouble> dense = in.to_dense();
    std::vector<cdouble> out(dim, cdouble{0.0, 0.0});
    apply(dense, out);
    return sparse_from_dense(out, prune);
}

SparseState apply_hermitian(const SparseOperator& op, const SparseState& v,
                            double prune) {
    if (v.dim != op.dim)
        throw std::invalid_argument("apply_hermitian: dimension mismatch");
    SparseState out(op.dim);
    for (const auto& [c, xc] : v.amps)
        for (const auto& [r, w] : op.rows[c])
            out.amps.emplace_back(r, std::conj(w) * xc);
    out.canonicalize(prune);
    return out;
}

double SparseOperator::hermiticity_error() const {
    double err = 0.0;
    for (std::uint64_t r = 0; r < dim; ++r) {
        for (const auto& [c, v] : rows[r]) {
            cdouble mirror{0.0, 0.0};
            const auto& rc = rows[c];
            auto it = std::lower_bound(
                rc.begin(), rc.end(), r,
                [](const auto& e, std::uint64_t key) { return e.first < key; });
            if (it != rc.end() && it->first == r) mirror = it->second;
            err = std::max(err, std::abs(v - std::conj(mirror)));
        }
    }
    return err;
}

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
    if (a.dim != b.dim) throw std::invalid_argument("operator+: dimension mismatch");
    SparseOperator out = a;
    for (std::uint64_t r = 0; r < b.dim; ++r)
        out.rows[r].insert(out.rows[r].end(), b.rows[r].begin(), b.rows[r].end());
    out.canonicalize();
    return out;
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
    if (a.dim != b.dim) throw std::invalid_argument("operator*: dimension mismatch");
    SparseOperator out(a.dim);
    for (std::uint64_t r = 0; r < a.dim; ++r) {
        for (const auto& [k, av] : a.rows[r])
            for (const auto& [c, bv] : b.rows[k])
                out.rows[r].emplace_back(c, av * bv);
    }
    out.canonicalize();
    return out;
}

SparseOperator scale(const SparseOperator& a, cdouble factor) {
    SparseOperator out = a;
    for (auto& row : out.rows)
        for (auto& [c, v] : row) v *= factor;
    return out;
}

double eigen_residual(const SparseOperator& op, const SparseState& v,
                      double lambda) {
    std::vector<cdouble> dense = v.to_dense();
    std::vector<cdouble> image(op.dim, cdouble{0.0, 0.0});
    op.apply(dense, image);
    double acc = 0.0;
    for (std::uint64_t i = 0; i < op.dim; ++i)
        acc += std::norm(image[i] - lambda * dense[i]);
    return std::sqrt(acc);
}

}  // namespace chargepage
