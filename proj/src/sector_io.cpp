#include "chargepage/sector_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace chargepage {

namespace {

constexpr std::uint32_t kMagic = 0x42535043u;  // "CPSB"
constexpr std::uint16_t kVersion = 1;

template <typename T>
void write_pod(std::ofstream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::ifstream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw std::runtime_error("sector file truncated");
    return value;
}

}  // namespace

void save_sector(const SectorBasis& basis, const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open sector file for writing: " +
                                       file.string());
    write_pod(out, kMagic);
    write_pod(out, kVersion);
    write_pod(out, std::int16_t(basis.label.model));
    write_pod(out, std::int16_t(basis.label.kind));
    write_pod(out, std::int16_t(basis.label.n_sites));
    write_pod(out, std::int32_t(basis.label.s2));
    write_pod(out, std::int32_t(basis.label.m2));
    write_pod(out, std::int32_t(basis.label.cx2));
    write_pod(out, std::int32_t(basis.label.cy2));
    write_pod(out, std::int32_t(basis.label.cz2));
    write_pod(out, std::int32_t(basis.label.alpha));
    write_pod(out, std::uint64_t(basis.ambient_dim));
    write_pod(out, std::uint64_t(basis.vectors.size()));
    for (const auto& v : basis.vectors) {
        write_pod(out, std::uint64_t(v.nnz()));
        for (const auto& [idx, amp] : v.amps) {
            write_pod(out, idx);
            write_pod(out, amp.real());
            write_pod(out, amp.imag());
        }
    }
    if (!out) throw std::runtime_error("sector file write failed: " + file.string());
}

SectorBasis load_sector(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open sector file: " + file.string());
    if (read_pod<std::uint32_t>(in) != kMagic)
        throw std::runtime_error("not a sector file: " + file.string());
    if (read_pod<std::uint16_t>(in) != kVersion)
        throw std::runtime_error("unsupported sector file version: " + file.string());
    SectorBasis basis;
    basis.label.model = ChargeModel(read_pod<std::int16_t>(in));
    basis.label.kind = SectorKind(read_pod<std::int16_t>(in));
    basis.label.n_sites = read_pod<std::int16_t>(in);
    basis.label.s2 = read_pod<std::int32_t>(in);
    basis.label.m2 = read_pod<std::int32_t>(in);
    basis.label.cx2 = read_pod<std::int32_t>(in);
    basis.label.cy2 = read_pod<std::int32_t>(in);
    basis.label.cz2 = read_pod<std::int32_t>(in);
    basis.label.alpha = read_pod<std::int32_t>(in);
    basis.ambient_dim = read_pod<std::uint64_t>(in);
    const std::uint64_t n_vectors = read_pod<std::uint64_t>(in);
    basis.vectors.reserve(n_vectors);
    for (std::uint64_t i = 0; i < n_vectors; ++i) {
        SparseState v(basis.ambient_dim);
        const std::uint64_t nnz = read_pod<std::uint64_t>(in);
        v.amps.reserve(nnz);
        for (std::uint64_t e = 0; e < nnz; ++e) {
            std::uint64_t idx = read_pod<std::uint64_t>(in);
            double re = read_pod<double>(in);
            double im = read_pod<double>(in);
            v.amps.emplace_back(idx, cdouble{re, im});
        }
        if (!v.is_canonical())
            throw std::runtime_error("corrupt sector file: " + file.string());
        basis.vectors.push_back(std::move(v));
    }
    return basis;
}

SectorBasis get_sector(const SectorLabel& label,
                       const std::filesystem::path& cache_dir) {
    const bool use_cache = !cache_dir.empty();
    std::filesystem::path file;
    if (use_cache) {
        file = cache_dir / (label.to_string() + ".cpsb");
        if (std::filesystem::exists(file)) {
            SectorBasis cached = load_sector(file);
            if (cached.label == label) return cached;
            // Key collision with different content: rebuild below.
        }
    }

    SectorBasis basis;
    switch (label.kind) {
        case SectorKind::microcanonical:
            basis = label.model == ChargeModel::noncommuting
                        ? microcanonical_noncommuting(label.n_sites)
                        : microcanonical_commuting(label.n_sites);
            break;
        case SectorKind::amc:
            basis = label.model == ChargeModel::noncommuting
                        ? amc_noncommuting(label.n_sites, label.s2, label.m2)
                        : amc_commuting_analog(label.n_sites, label.s2, label.m2)
                              .basis;
            break;
        case SectorKind::joint_commuting:
            basis = commuting_sector(label.n_sites, label.cx2, label.cy2,
                                     label.cz2);
            break;
        case SectorKind::single_charge:
            basis = single_charge_sector(label.model, label.alpha, label.n_sites);
            break;
    }
    if (use_cache) {
        std::filesystem::create_directories(cache_dir);
        save_sector(basis, file);
    }
    return basis;
}

}  // namespace chargepage
