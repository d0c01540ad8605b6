#include "anls/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>

#include "anls/errors.hpp"

namespace anls {
namespace {

constexpr std::size_t kHeaderSize = 4 + 4 + 16 + 16;

template <class T>
void put_le(std::vector<unsigned char>& out, T value) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  const U bits = std::bit_cast<U>(value);
  for (std::size_t b = 0; b < sizeof(U); ++b) out.push_back(static_cast<unsigned char>(bits >> (8 * b)));
}

template <class T>
T get_le(const unsigned char* in) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  U bits = 0;
  for (std::size_t b = 0; b < sizeof(U); ++b) bits |= static_cast<U>(in[b]) << (8 * b);
  return std::bit_cast<T>(bits);
}

}  // namespace

std::vector<unsigned char> encode_snapshot(const Field& f) {
  const auto& g = f.grid();
  std::vector<unsigned char> out;
  out.reserve(kHeaderSize + 16 * g.size());
  for (const char c : {'A', 'N', 'L', 'S'}) out.push_back(static_cast<unsigned char>(c));
  put_le(out, kSnapshotVersion);
  put_le(out, static_cast<std::uint64_t>(g.nx()));
  put_le(out, static_cast<std::uint64_t>(g.ny()));
  put_le(out, g.lx());
  put_le(out, g.ly());
  for (const auto& z : f.data()) {
    put_le(out, z.real());
    put_le(out, z.imag());
  }
  return out;
}

Field decode_snapshot(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), "ANLS", 4) != 0) {
    throw DomainError("snapshot: missing ANLS magic");
  }
  const auto version = get_le<std::uint32_t>(bytes.data() + 4);
  if (version != kSnapshotVersion) {
    throw DomainError("snapshot: unsupported version " + std::to_string(version));
  }
  const auto nx = get_le<std::uint64_t>(bytes.data() + 8);
  const auto ny = get_le<std::uint64_t>(bytes.data() + 16);
  const auto lx = get_le<double>(bytes.data() + 24);
  const auto ly = get_le<double>(bytes.data() + 32);
  if (nx == 0 || ny == 0 || nx > (1u << 20) || ny > (1u << 20) ||
      bytes.size() != kHeaderSize + 16 * nx * ny) {
    throw DomainError("snapshot: size does not match header");
  }
  Grid2D g(nx, ny, lx, ly);
  std::vector<Complex> data(nx * ny);
  const unsigned char* p = bytes.data() + kHeaderSize;
  for (auto& z : data) {
    z = Complex(get_le<double>(p), get_le<double>(p + 8));
    p += 16;
  }
  return Field(g, std::move(data));
}

void write_snapshot(const std::filesystem::path& path, const Field& f) {
  const auto bytes = encode_snapshot(f);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path.string());
}

Field read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_snapshot(bytes);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records) {
  std::string out = "t,mass,energy,q,k,virial,h12_norm,boundary_mass_fraction\n";
  for (const auto& r : records) {
    for (double v : {r.t, r.mass, r.energy, r.q, r.k, r.virial, r.h12_norm}) {
      out += format_double(v);
      out += ',';
    }
    out += format_double(r.boundary_mass_fraction);
    out += '\n';
  }
  return out;
}

}  // namespace anls
