#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "anls/evolution.hpp"
#include "anls/grid.hpp"

namespace anls {

/// Binary field snapshot:
///   "ANLS" | u32 version = 1 | u64 nx | u64 ny | f64 Lx | f64 Ly | nx*ny (f64 re, f64 im)
/// all little-endian, x the slow axis.
inline constexpr std::uint32_t kSnapshotVersion = 1;

std::vector<unsigned char> encode_snapshot(const Field& f);
Field decode_snapshot(const std::vector<unsigned char>& bytes);

void write_snapshot(const std::filesystem::path& path, const Field& f);
Field read_snapshot(const std::filesystem::path& path);

/// Shortest round-trippable decimal text, 17 significant digits.
std::string format_double(double v);

/// Header "t,mass,energy,q,k,virial,h12_norm,boundary_mass_fraction".
std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records);

}  // namespace anls
