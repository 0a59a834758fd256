#include "chargepage/sectors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "chargepage/asymptotics.hpp"
#include "chargepage/dense.hpp"
#include "chargepage/lattice.hpp"

namespace chargepage {

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;

// Bell-state components in the site-local basis v = 2a + b (bit value 1 =
// spin down): each Bell state is (sign0 * |v0> + sign1 * |v1>)/sqrt(2).
struct BellComponents {
    int v0, v1;
    double sign0, sign1;
};
constexpr BellComponents kBell[4] = {
    {2, 1, 1.0, -1.0},  // B1 = (|da ub> - |ua db>)/sqrt2
    {3, 0, 1.0, -1.0},  // B2 = (|da db> - |ua ub>)/sqrt2
    {3, 0, 1.0, 1.0},   // B3 = (|da db> + |ua ub>)/sqrt2
    {2, 1, 1.0, 1.0},   // B4 = (|da ub> + |ua db>)/sqrt2
};

// Raw eigenvalue of C_alpha on Bell state k.
constexpr int kBellEigen[3][4] = {
    {-1, -1, 1, 1},   // C1
    {-1, 1, -1, 1},   // C2
    {-1, 1, 1, -1},   // C3
};

SparseState bell_string_state(const std::vector<int>& bell_of_site, int n) {
    const int count = static_cast<int>(bell_of_site.size());
    SparseState out(std::uint64_t{1} << (2 * n));
    const double scale = std::pow(kSqrtHalf, count);
    const std::uint64_t combos = std::uint64_t{1} << count;
    out.amps.reserve(combos);
    for (std::uint64_t choice = 0; choice < combos; ++choice) {
        std::uint64_t idx = 0;
        double sign = 1.0;
        for (int j = 0; j < count; ++j) {
            const BellComponents& bc = kBell[bell_of_site[j]];
            if (choice & (std::uint64_t{1} << j)) {
                idx |= std::uint64_t(bc.v1) << (2 * j);
                sign *= bc.sign1;
            } else {
                idx |= std::uint64_t(bc.v0) << (2 * j);
                sign *= bc.sign0;
            }
        }
        out.amps.emplace_back(idx, cdouble{sign * scale, 0.0});
    }
    out.canonicalize();
    return out;
}

SectorLabel micro_label(ChargeModel model, int n) {
    SectorLabel l;
    l.model = model;
    l.kind = SectorKind::microcanonical;
    l.n_sites = n;
    return l;
}

// Single-qubit rotation of a dense vector into the eigenbasis of the given
// Pauli axis at bit position `bit` (afterwards bit 0 <-> eigenvalue +1).
void rotate_bit_to_eigenbasis(std::vector<cdouble>& dense, int bit, Axis axis) {
    if (axis == Axis::Z) return;
    const std::uint64_t m = std::uint64_t{1} << bit;
    const std::uint64_t dim = dense.size();
    for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & m) continue;
        cdouble x = dense[i], y = dense[i | m];
        if (axis == Axis::X) {
            dense[i] = (x + y) * kSqrtHalf;
            dense[i | m] = (x - y) * kSqrtHalf;
        } else {  // Y: eigenvectors (|0> +/- i|1>)/sqrt2
            dense[i] = (x - cdouble{0, 1} * y) * kSqrtHalf;
            dense[i | m] = (x + cdouble{0, 1} * y) * kSqrtHalf;
        }
    }
}

// Per-vector outcome histogram over raw eigenvalues {-n, -n+2, .., n}
// (index (raw + n)/2). The fast path works on the extracted a register when
// the vector is an (a state) x (b basis string) product and the charge acts
// on a qubits only.
std::vector<double> vector_outcome_histogram(const SparseState& vec,
                                             const ChargeFamily& charge) {
    const int n = charge.n_sites;
    std::vector<double> hist(n + 1, 0.0);
    const Axis axis = static_cast<Axis>(charge.alpha);
    LatticeShape shape(n);

    bool uniform_b = charge.model == ChargeModel::noncommuting && !vec.amps.empty();
    if (uniform_b) {
        std::uint64_t b0 = extract_b_bits(vec.amps.front().first, n);
        for (const auto& [idx, amp] : vec.amps)
            if (extract_b_bits(idx, n) != b0) {
                uniform_b = false;
                break;
            }
    }

    if (uniform_b) {
        std::vector<cdouble> a_dense(std::uint64_t{1} << n, cdouble{0, 0});
        for (const auto& [idx, amp] : vec.amps)
            a_dense[extract_a_bits(idx, n)] = amp;
        for (int j = 0; j < n; ++j) rotate_bit_to_eigenbasis(a_dense, j, axis);
        for (std::uint64_t i = 0; i < a_dense.size(); ++i) {
            double w = std::norm(a_dense[i]);
            if (w == 0.0) continue;
            int down = std::popcount(i);
            hist[(n - 2 * down + n) / 2] += w;
        }
        return hist;
    }

    std::vector<cdouble> dense = vec.to_dense();
    if (charge.model == ChargeModel::noncommuting) {
        for (int j = 0; j < n; ++j)
            rotate_bit_to_eigenbasis(dense, shape.bit_of(j, SiteQubit::a), axis);
        const std::uint64_t amask = shape.a_mask();
        for (std::uint64_t i = 0; i < dense.size(); ++i) {
            double w = std::norm(dense[i]);
            if (w == 0.0) continue;
            int down = std::popcount(i & amask);
            hist[(n - 2 * down + n) / 2] += w;
        }
    } else {
        for (int j = 0; j < n; ++j) {
            rotate_bit_to_eigenbasis(dense, shape.bit_of(j, SiteQubit::a), axis);
            rotate_bit_to_eigenbasis(dense, shape.bit_of(j, SiteQubit::b), axis);
        }
        const std::uint64_t bmask = shape.b_mask();
        for (std::uint64_t i = 0; i < dense.size(); ++i) {
            double w = std::norm(dense[i]);
            if (w == 0.0) continue;
            // Site eigenvalue -1 where the site's two (rotated) bits differ.
            int odd = std::popcount((i ^ (i >> 1)) & bmask);
            hist[(n - 2 * odd + n) / 2] += w;
        }
    }
    return hist;
}

OutcomeDistribution histogram_to_distribution(const std::vector<double>& hist,
                                              int n, double norm) {
    OutcomeDistribution dist;
    int lo = -1, hi = -1;
    for (int i = 0; i <= n; ++i) {
        if (hist[i] / norm > 1e-12) {
            if (lo < 0) lo = i;
            hi = i;
        }
    }
    if (lo < 0) return dist;
    for (int i = lo; i <= hi; ++i) dist.p[2 * i - n] = hist[i] / norm;
    return dist;
}

}  // namespace

std::string to_string(SectorKind k) {
    switch (k) {
        case SectorKind::microcanonical: return "microcanonical";
        case SectorKind::amc: return "amc";
        case SectorKind::single_charge: return "single-charge";
        case SectorKind::joint_commuting: return "joint-commuting";
    }
    return "?";
}

std::string SectorLabel::to_string() const {
    std::ostringstream os;
    os << chargepage::to_string(model) << "-" << chargepage::to_string(kind)
       << "-n" << n_sites;
    switch (kind) {
        case SectorKind::microcanonical: break;
        case SectorKind::amc: os << "-s" << s2 << "-m" << m2; break;
        case SectorKind::joint_commuting:
            os << "-cx" << cx2 << "-cy" << cy2 << "-cz" << cz2;
            break;
        case SectorKind::single_charge: os << "-a" << alpha; break;
    }
    return os.str();
}

std::array<int, 3> BellPopulation::raw_eigenvalues() const {
    std::array<int, 3> out{0, 0, 0};
    for (int a = 0; a < 3; ++a)
        for (int k = 0; k < 4; ++k) out[a] += kBellEigen[a][k] * p[k];
    return out;
}

std::vector<SparseState> bell_product_basis(const BellPopulation& pop, int n) {
    if (pop.total() != n)
        throw std::invalid_argument("bell_product_basis: populations must sum to N");
    for (int k = 0; k < 4; ++k)
        if (pop.p[k] < 0)
            throw std::invalid_argument("bell_product_basis: negative population");
    std::vector<SparseState> out;
    std::vector<int> assignment(n);
    const std::uint64_t total = std::uint64_t{1} << (2 * n);
    for (std::uint64_t w = 0; w < total; ++w) {
        std::array<int, 4> counts{0, 0, 0, 0};
        for (int j = 0; j < n; ++j) {
            assignment[j] = static_cast<int>((w >> (2 * j)) & 3u);
            ++counts[assignment[j]];
        }
        if (counts == pop.p) out.push_back(bell_string_state(assignment, n));
    }
    return out;
}

SectorBasis microcanonical_commuting(int n) {
    if (n % 4 != 0)
        throw sector_empty_error(
            "commuting microcanonical sector exists only for N = 0 mod 4");
    BellPopulation pop{{n / 4, n / 4, n / 4, n / 4}};
    SectorBasis basis;
    basis.label = micro_label(ChargeModel::commuting, n);
    basis.ambient_dim = std::uint64_t{1} << (2 * n);
    basis.vectors = bell_product_basis(pop, n);
    return basis;
}

std::vector<SparseState> coupled_spin_basis(int n_spins, int s2, int m2) {
    if (n_spins < 1 || n_spins > 10)
        throw std::invalid_argument("coupled_spin_basis: n_spins must be in 1..10");
    if (s2 < 0 || std::abs(m2) > s2 || s2 > n_spins || (n_spins - s2) % 2 != 0 ||
        (s2 - m2) % 2 != 0)
        return {};

    struct Path {
        int s2;
        // by_m[i] is the dense state with m2 = -s2 + 2i, length 2^level.
        std::vector<std::vector<cdouble>> by_m;
    };
    std::vector<Path> level;
    level.push_back({1, {{cdouble{0, 0}, cdouble{1, 0}},     // m2 = -1: |down>
                         {cdouble{1, 0}, cdouble{0, 0}}}});  // m2 = +1: |up>

    for (int k = 1; k < n_spins; ++k) {
        const std::uint64_t half = std::uint64_t{1} << k;
        std::vector<Path> next;
        next.reserve(2 * level.size());
        for (const Path& old : level) {
            const int ts = old.s2;
            auto old_state = [&](int mm2) -> const std::vector<cdouble>* {
                if (std::abs(mm2) > ts) return nullptr;
                return &old.by_m[(mm2 + ts) / 2];
            };
            // Adding spin-1/2 at bit k: |s, m> = A |s', m-1/2>|up> + B |s', m+1/2>|down>
            // with the standard j (x) 1/2 coefficients (Condon-Shortley signs).
            auto make_child = [&](int child_s2, bool raised) {
                Path child;
                child.s2 = child_s2;
                for (int mm2 = -child_s2; mm2 <= child_s2; mm2 += 2) {
                    double a_coef, b_coef;
                    if (raised) {
                        a_coef = std::sqrt((ts + mm2 + 1) / (2.0 * (ts + 1)));
                        b_coef = std::sqrt((ts - mm2 + 1) / (2.0 * (ts + 1)));
                    } else {
                        a_coef = -std::sqrt((ts - mm2 + 1) / (2.0 * (ts + 1)));
                        b_coef = std::sqrt((ts + mm2 + 1) / (2.0 * (ts + 1)));
                    }
                    std::vector<cdouble> v(half * 2, cdouble{0, 0});
                    if (const auto* lo = old_state(mm2 - 1))
                        for (std::uint64_t i = 0; i < half; ++i) v[i] = a_coef * (*lo)[i];
                    if (const auto* hi = old_state(mm2 + 1))
                        for (std::uint64_t i = 0; i < half; ++i)
                            v[i + half] = b_coef * (*hi)[i];
                    child.by_m.push_back(std::move(v));
                }
                next.push_back(std::move(child));
            };
            make_child(ts + 1, true);
            if (ts >= 1) make_child(ts - 1, false);
        }
        level = std::move(next);
    }

    std::vector<SparseState> out;
    for (const Path& path : level) {
        if (path.s2 != s2) continue;
        out.push_back(sparse_from_dense(path.by_m[(m2 + s2) / 2]));
    }
    return out;
}

namespace {

SectorBasis noncommuting_spin_sector(int n, int s2, int m2, SectorKind kind) {
    if (s2 < 0 || std::abs(m2) > s2 || s2 > n || (n - s2) % 2 != 0 ||
        (s2 - m2) % 2 != 0)
        throw sector_empty_error("no (s, m) eigenspace with these quantum numbers");
    std::vector<SparseState> a_states = coupled_spin_basis(n, s2, m2);
    SectorBasis basis;
    basis.label.model = ChargeModel::noncommuting;
    basis.label.kind = kind;
    basis.label.n_sites = n;
    basis.label.s2 = s2;
    basis.label.m2 = m2;
    basis.ambient_dim = std::uint64_t{1} << (2 * n);
    const std::uint64_t b_count = std::uint64_t{1} << n;
    basis.vectors.reserve(a_states.size() * b_count);
    for (const SparseState& a : a_states) {
        for (std::uint64_t b = 0; b < b_count; ++b) {
            SparseState v(basis.ambient_dim);
            v.amps.reserve(a.amps.size());
            for (const auto& [a_idx, amp] : a.amps)
                v.amps.emplace_back(interleave_ab(a_idx, b, n), amp);
            basis.vectors.push_back(std::move(v));
        }
    }
    return basis;
}

}  // namespace

SectorBasis microcanonical_noncommuting(int n) {
    if (n % 2 != 0)
        throw sector_empty_error(
            "noncommuting microcanonical sector exists only for even N");
    SectorBasis basis = noncommuting_spin_sector(n, 0, 0, SectorKind::microcanonical);
    basis.label = micro_label(ChargeModel::noncommuting, n);
    return basis;
}

SectorBasis amc_noncommuting(int n, int s2, int m2) {
    return noncommuting_spin_sector(n, s2, m2, SectorKind::amc);
}

SectorBasis commuting_sector(int n, int cx2, int cy2, int cz2) {
    SectorBasis basis;
    basis.label.model = ChargeModel::commuting;
    basis.label.kind = SectorKind::joint_commuting;
    basis.label.n_sites = n;
    basis.label.cx2 = cx2;
    basis.label.cy2 = cy2;
    basis.label.cz2 = cz2;
    basis.ambient_dim = std::uint64_t{1} << (2 * n);

    // The three eigenvalues fix the Bell populations uniquely:
    // P_k = (N + sum_alpha sign_alpha(k) raw_alpha) / 4.
    std::array<int, 4> numer;
    for (int k = 0; k < 4; ++k)
        numer[k] = n + kBellEigen[0][k] * cx2 + kBellEigen[1][k] * cy2 +
                   kBellEigen[2][k] * cz2;
    BellPopulation pop;
    for (int k = 0; k < 4; ++k) {
        if (numer[k] < 0 || numer[k] % 4 != 0) return basis;  // empty
        pop.p[k] = numer[k] / 4;
    }
    basis.vectors = bell_product_basis(pop, n);
    return basis;
}

double OutcomeDistribution::total() const {
    double t = 0.0;
    for (const auto& [raw, prob] : p) t += prob;
    return t;
}

double OutcomeDistribution::at_raw(int raw) const {
    auto it = p.find(raw);
    return it == p.end() ? 0.0 : it->second;
}

bool OutcomeDistribution::single_peaked() const {
    if (p.empty()) return false;
    std::vector<double> v;
    v.reserve(p.size());
    for (const auto& [raw, prob] : p) v.push_back(prob);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[peak]) peak = i;
    constexpr double eps = 1e-9;
    for (std::size_t i = 0; i < peak; ++i)
        if (v[i] > v[i + 1] + eps) return false;
    for (std::size_t i = peak; i + 1 < v.size(); ++i)
        if (v[i + 1] > v[i] + eps) return false;
    return true;
}

OutcomeDistribution outcome_distribution(const SectorBasis& basis,
                                         const ChargeFamily& charge) {
    if (basis.empty())
        throw std::invalid_argument("outcome_distribution: empty sector");
    if (basis.label.n_sites != charge.n_sites)
        throw std::invalid_argument("outcome_distribution: size mismatch");
    const int n = charge.n_sites;
    const std::int64_t count = static_cast<std::int64_t>(basis.vectors.size());
    std::vector<std::vector<double>> partial(count);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (std::int64_t i = 0; i < count; ++i)
        partial[i] = vector_outcome_histogram(basis.vectors[i], charge);

    std::vector<double> hist(n + 1, 0.0);
    for (const auto& h : partial)
        for (int i = 0; i <= n; ++i) hist[i] += h[i];
    return histogram_to_distribution(hist, n, double(count));
}

OutcomeDistribution wigner_d_distribution(int s2, int m2) {
    if (s2 < 0 || std::abs(m2) > s2 || (s2 - m2) % 2 != 0)
        throw std::invalid_argument("wigner_d_distribution: need |m| <= s");
    if (s2 > 60)
        throw std::invalid_argument("wigner_d_distribution: s too large");
    // Factorials up to (2s)! in double; exact to 1 ulp through 22!, ample
    // precision through the guard above.
    std::vector<double> fact(s2 + 2, 1.0);
    for (int i = 1; i < static_cast<int>(fact.size()); ++i)
        fact[i] = fact[i - 1] * i;

    OutcomeDistribution dist;
    // d^s_{g,m}(pi/2): every term carries the same (1/sqrt2)^{2s} factor.
    for (int g2 = -s2; g2 <= s2; g2 += 2) {
        const int jpg = (s2 + g2) / 2, jmg = (s2 - g2) / 2;
        const int jpm = (s2 + m2) / 2, jmm = (s2 - m2) / 2;
        double pref = std::sqrt(fact[jpg] * fact[jmg] * fact[jpm] * fact[jmm]);
        double sum = 0.0;
        const int k_lo = std::max(0, (m2 - g2) / 2);
        const int k_hi = std::min(jpm, jmg);
        for (int k = k_lo; k <= k_hi; ++k) {
            double denom = fact[jpm - k] * fact[k] * fact[jmg - k] *
                           fact[(g2 - m2) / 2 + k];
            sum += (k % 2 == 0 ? 1.0 : -1.0) / denom;
        }
        double d = pref * sum * std::pow(0.5, s2 / 2.0);
        dist.p[g2] = d * d;
    }
    return dist;
}

namespace {

// The six Bell-string eigenbasis vectors are simultaneous eigenvectors of
// every C_alpha, so the distribution over a union of commuting sectors is
// pure dimension counting (this is what the projector route evaluates to).
OutcomeDistribution counting_distribution(const std::vector<BellPopulation>& pops,
                                          const std::vector<std::uint64_t>& dims,
                                          int alpha, int n) {
    std::vector<double> hist(n + 1, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < pops.size(); ++i) {
        int raw = pops[i].raw_eigenvalues()[alpha - 1];
        hist[(raw + n) / 2] += double(dims[i]);
        total += double(dims[i]);
    }
    return histogram_to_distribution(hist, n, total);
}

bool distributions_match(const OutcomeDistribution& a,
                         const OutcomeDistribution& b, double tol) {
    std::vector<int> keys;
    for (const auto& [raw, prob] : a.p) keys.push_back(raw);
    for (const auto& [raw, prob] : b.p) keys.push_back(raw);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (int raw : keys)
        if (std::abs(a.at_raw(raw) - b.at_raw(raw)) > tol) return false;
    return true;
}

}  // namespace

AmcAnalogResult amc_commuting_analog(int n, int s2, int m2) {
    AmcAnalogResult result;
    SectorBasis nc = amc_noncommuting(n, s2, m2);

    result.basis.label.model = ChargeModel::commuting;
    result.basis.label.kind = SectorKind::amc;
    result.basis.label.n_sites = n;
    result.basis.label.s2 = s2;
    result.basis.label.m2 = m2;
    result.basis.label.cz2 = m2;
    result.basis.ambient_dim = std::uint64_t{1} << (2 * n);

    // Keep the C3 eigenvalue at m; admit sectors with |c_x|, |c_y| <= s;
    // empty label combinations drop out silently.
    std::vector<std::uint64_t> dims;
    for (int cx2 = -s2; cx2 <= s2; ++cx2) {
        for (int cy2 = -s2; cy2 <= s2; ++cy2) {
            SectorBasis part = commuting_sector(n, cx2, cy2, m2);
            if (part.empty()) continue;
            std::array<int, 4> numer;
            for (int k = 0; k < 4; ++k)
                numer[k] = n + kBellEigen[0][k] * cx2 + kBellEigen[1][k] * cy2 +
                           kBellEigen[2][k] * m2;
            BellPopulation pop;
            for (int k = 0; k < 4; ++k) pop.p[k] = numer[k] / 4;
            result.populations.push_back(pop);
            dims.push_back(part.dim());
            for (auto& v : part.vectors) result.basis.vectors.push_back(std::move(v));
        }
    }

    for (int alpha = 1; alpha <= 3; ++alpha) {
        result.p_noncommuting[alpha - 1] =
            outcome_distribution(nc, q_charge(alpha, n));
        result.p_commuting[alpha - 1] =
            counting_distribution(result.populations, dims, alpha, n);
    }
    result.matched = !result.basis.empty();
    for (int alpha = 1; alpha <= 3; ++alpha)
        result.matched = result.matched &&
                         distributions_match(result.p_noncommuting[alpha - 1],
                                             result.p_commuting[alpha - 1], 1e-9);
    return result;
}

SectorBasis single_charge_sector(ChargeModel model, int alpha, int n) {
    if (alpha < 1 || alpha > 3)
        throw std::invalid_argument("single_charge_sector: alpha must be 1..3");
    if (n % 2 != 0)
        throw sector_empty_error("eigenvalue-0 charge sector exists only for even N");
    SectorBasis basis;
    basis.label.model = model;
    basis.label.kind = SectorKind::single_charge;
    basis.label.n_sites = n;
    basis.label.alpha = alpha;
    basis.ambient_dim = std::uint64_t{1} << (2 * n);
    const std::uint64_t a_count = std::uint64_t{1} << n;

    if (model == ChargeModel::noncommuting) {
        // Product strings of single-qubit Pauli-alpha eigenvectors on the a
        // qubits (balanced signs) tensored with computational b strings.
        // sigma bit set = eigenvalue -1 on that site.
        for (std::uint64_t sigma = 0; sigma < a_count; ++sigma) {
            if (std::popcount(sigma) != n / 2) continue;
            SparseState a_state(a_count);
            if (alpha == 3) {
                a_state.amps.emplace_back(sigma, cdouble{1.0, 0.0});
            } else {
                const double scale = std::pow(kSqrtHalf, n);
                for (std::uint64_t a_idx = 0; a_idx < a_count; ++a_idx) {
                    cdouble amp{scale, 0.0};
                    for (int j = 0; j < n; ++j) {
                        bool minus = sigma & (std::uint64_t{1} << j);
                        bool down = a_idx & (std::uint64_t{1} << j);
                        if (!down) continue;
                        if (alpha == 1)
                            amp *= minus ? -1.0 : 1.0;
                        else
                            amp *= minus ? cdouble{0, -1} : cdouble{0, 1};
                    }
                    a_state.amps.emplace_back(a_idx, amp);
                }
            }
            for (std::uint64_t b = 0; b < a_count; ++b) {
                SparseState v(basis.ambient_dim);
                v.amps.reserve(a_state.amps.size());
                for (const auto& [a_idx, amp] : a_state.amps)
                    v.amps.emplace_back(interleave_ab(a_idx, b, n), amp);
                basis.vectors.push_back(std::move(v));
            }
        }
    } else {
        // Bell strings with balanced C_alpha site eigenvalues.
        std::vector<int> assignment(n);
        const std::uint64_t total = std::uint64_t{1} << (2 * n);
        for (std::uint64_t w = 0; w < total; ++w) {
            int raw = 0;
            for (int j = 0; j < n; ++j) {
                assignment[j] = static_cast<int>((w >> (2 * j)) & 3u);
                raw += kBellEigen[alpha - 1][assignment[j]];
            }
            if (raw == 0) basis.vectors.push_back(bell_string_state(assignment, n));
        }
    }
    return basis;
}

PartialConstraintReport partial_constraint_check(int n) {
    if (n != 4 && n != 8)
        throw std::invalid_argument("partial_constraint_check: N must be 4 or 8");
    PartialConstraintReport report;

    // ker C1 ^ ker C2: populations with P1 + P2 = P3 + P4 and
    // P1 + P3 = P2 + P4, i.e. (p, q, q, p) with 2(p + q) = N.
    for (int p = 0; p <= n / 2; ++p) {
        int q = n / 2 - p;
        report.dim_kernel_c1c2 += multinomial(n, {p, q, q, p});
    }
    report.dim_c0 = multinomial(n, {n / 4, n / 4, n / 4, n / 4});

    // ker Q1 ^ ker Q2 on the a register (the b factor multiplies both sides
    // by 2^N). Y does not preserve ker X, so the joint kernel is the null
    // space of the Gram of Y restricted to ker X: ||Y K w|| = 0.
    Eigen::MatrixXcd x_tot =
        to_dense_matrix(pauli_total_on_register(Axis::X, n));
    Eigen::MatrixXcd y_tot =
        to_dense_matrix(pauli_total_on_register(Axis::Y, n));
    Eigen::MatrixXcd kx = eigenspace(x_tot, 0.0);
    Eigen::MatrixXcd y_on_kx = y_tot * kx;
    Eigen::MatrixXcd gram = y_on_kx.adjoint() * y_on_kx;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram,
                                                       Eigen::EigenvaluesOnly);
    std::uint64_t joint_dim = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (std::abs(es.eigenvalues()(i)) < 1e-8) ++joint_dim;
    report.dim_kernel_q1q2 = joint_dim << n;
    report.dim_n0 =
        std::uint64_t(catalan(n / 2, n / 2)) * (std::uint64_t{1} << n);

    report.q_kernel_equals_n0 = report.dim_kernel_q1q2 == report.dim_n0;
    report.c_kernel_strictly_larger = report.dim_kernel_c1c2 > report.dim_c0;
    return report;
}

namespace {

bool all_uniform_b(const SectorBasis& basis, std::vector<std::uint64_t>& b_of) {
    const int n = basis.label.n_sites;
    b_of.resize(basis.vectors.size());
    for (std::size_t i = 0; i < basis.vectors.size(); ++i) {
        const auto& amps = basis.vectors[i].amps;
        if (amps.empty()) return false;
        std::uint64_t b0 = extract_b_bits(amps.front().first, n);
        for (const auto& [idx, amp] : amps)
            if (extract_b_bits(idx, n) != b0) return false;
        b_of[i] = b0;
    }
    return true;
}

}  // namespace

double orthonormality_error(const SectorBasis& basis) {
    const std::size_t count = basis.vectors.size();
    if (count == 0) return 0.0;

    // All single-amplitude vectors: Gram deviations reduce to index clashes
    // and amplitude moduli.
    bool all_single = true;
    for (const auto& v : basis.vectors)
        if (v.nnz() != 1) {
            all_single = false;
            break;
        }
    if (all_single) {
        std::vector<std::uint64_t> idx(count);
        double err = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            idx[i] = basis.vectors[i].amps[0].first;
            err = std::max(err,
                           std::abs(std::abs(basis.vectors[i].amps[0].second) - 1.0));
        }
        std::sort(idx.begin(), idx.end());
        for (std::size_t i = 1; i < count; ++i)
            if (idx[i] == idx[i - 1]) err = std::max(err, 1.0);
        return err;
    }

    // Vectors living on distinct b strings have disjoint supports, so only
    // same-b pairs need explicit inner products.
    std::vector<std::uint64_t> b_of;
    std::vector<std::vector<std::uint32_t>> groups;
    if (all_uniform_b(basis, b_of)) {
        std::map<std::uint64_t, std::vector<std::uint32_t>> by_b;
        for (std::size_t i = 0; i < count; ++i)
            by_b[b_of[i]].push_back(static_cast<std::uint32_t>(i));
        for (auto& [b, members] : by_b) groups.push_back(std::move(members));
    } else {
        groups.emplace_back(count);
        std::iota(groups.back().begin(), groups.back().end(), 0u);
    }

    double err = 0.0;
    for (const auto& members : groups) {
        const std::int64_t size = static_cast<std::int64_t>(members.size());
        double group_err = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) reduction(max : group_err)
#endif
        for (std::int64_t i = 0; i < size; ++i) {
            const SparseState& vi = basis.vectors[members[i]];
            group_err = std::max(group_err, std::abs(vi.norm_sq() - 1.0));
            for (std::int64_t j = i + 1; j < size; ++j) {
                const SparseState& vj = basis.vectors[members[j]];
                // Disjoint support ranges cannot overlap.
                if (vi.amps.back().first < vj.amps.front().first ||
                    vj.amps.back().first < vi.amps.front().first)
                    continue;
                group_err = std::max(group_err, std::abs(inner_product(vi, vj)));
            }
        }
        err = std::max(err, group_err);
    }
    return err;
}

double defining_residual(const SectorBasis& basis) {
    const int n = basis.label.n_sites;
    const SectorLabel& label = basis.label;

    struct Constraint {
        SparseOperator op;
        double lambda;
    };
    std::vector<Constraint> constraints;
    bool check_spin_squared = false;
    double spin_squared_eig = 0.0;

    switch (label.kind) {
        case SectorKind::microcanonical:
            for (int a = 1; a <= 3; ++a)
                constraints.push_back({make_charge(label.model, a, n).op, 0.0});
            break;
        case SectorKind::amc:
            if (label.model == ChargeModel::noncommuting) {
                constraints.push_back({q_charge(3, n).op, double(label.m2)});
                check_spin_squared = true;
                spin_squared_eig = label.s2 * (label.s2 + 2) / 4.0;
            } else {
                // AMC analogs are unions of joint eigenspaces; only the kept
                // C3 eigenvalue is shared by every vector.
                constraints.push_back({c_charge(3, n).op, double(label.cz2)});
            }
            break;
        case SectorKind::joint_commuting:
            constraints.push_back({c_charge(1, n).op, double(label.cx2)});
            constraints.push_back({c_charge(2, n).op, double(label.cy2)});
            constraints.push_back({c_charge(3, n).op, double(label.cz2)});
            break;
        case SectorKind::single_charge:
            constraints.push_back({make_charge(label.model, label.alpha, n).op, 0.0});
            break;
    }

    std::vector<SparseOperator> q_ops;
    if (check_spin_squared)
        for (int a = 1; a <= 3; ++a) q_ops.push_back(q_charge(a, n).op);

    double worst = 0.0;
    const std::int64_t count = static_cast<std::int64_t>(basis.vectors.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) reduction(max : worst)
#endif
    for (std::int64_t i = 0; i < count; ++i) {
        const SparseState& v = basis.vectors[i];
        for (const auto& c : constraints) {
            SparseState image = apply_hermitian(c.op, v, 0.0);
            double acc = 0.0;
            std::size_t ii = 0, jj = 0;
            while (ii < image.amps.size() || jj < v.amps.size()) {
                if (jj >= v.amps.size() ||
                    (ii < image.amps.size() && image.amps[ii].first < v.amps[jj].first))
                    acc += std::norm(image.amps[ii++].second);
                else if (ii >= image.amps.size() ||
                         image.amps[ii].first > v.amps[jj].first)
                    acc += std::norm(c.lambda * v.amps[jj++].second);
                else {
                    acc += std::norm(image.amps[ii].second -
                                     c.lambda * v.amps[jj].second);
                    ++ii, ++jj;
                }
            }
            worst = std::max(worst, std::sqrt(acc));
        }
        if (check_spin_squared) {
            // S^2 v = (1/4) sum_alpha Q_alpha (Q_alpha v), applied sparsely.
            SparseState image(v.dim);
            for (const auto& q : q_ops) {
                SparseState twice = apply_hermitian(q, apply_hermitian(q, v, 0.0), 0.0);
                for (const auto& [idx, amp] : twice.amps)
                    image.amps.emplace_back(idx, 0.25 * amp);
            }
            image.canonicalize(0.0);
            double acc = 0.0;
            std::size_t ii = 0, jj = 0;
            while (ii < image.amps.size() || jj < v.amps.size()) {
                if (jj >= v.amps.size() ||
                    (ii < image.amps.size() && image.amps[ii].first < v.amps[jj].first))
                    acc += std::norm(image.amps[ii++].second);
                else if (ii >= image.amps.size() ||
                         image.amps[ii].first > v.amps[jj].first)
                    acc += std::norm(spin_squared_eig * v.amps[jj++].second);
                else {
                    acc += std::norm(image.amps[ii].second -
                                     spin_squared_eig * v.amps[jj].second);
                    ++ii, ++jj;
                }
            }
            worst = std::max(worst, std::sqrt(acc));
        }
    }
    return worst;
}

}  // namespace chargepage
