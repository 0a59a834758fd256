/*
 * Binary container for sector bases, plus a directory cache keyed by the
 * sector label. Format (little endian):
 *
 *   magic   u32   'CPSB' (0x42535043)
 *   version u16   1
 *   model   i16, kind i16, n_sites i16
 *   s2, m2, cx2, cy2, cz2, alpha   i32 each
 *   ambient_dim  u64
 *   n_vectors    u64
 *   per vector:  nnz u64, then nnz * (index u64, re f64, im f64)
 */
#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "chargepage/sectors.hpp"

namespace chargepage {

void save_sector(const SectorBasis& basis, const std::filesystem::path& file);
SectorBasis load_sector(const std::filesystem::path& file);

// Builds the sector named by the label (microcanonical / amc / amc analog /
// single charge), consulting and populating `cache_dir` unless it is empty.
SectorBasis get_sector(const SectorLabel& label,
                       const std::filesystem::path& cache_dir);

}  // namespace chargepage
