#pragma once

// Binary field snapshots.
//
// Layout (little-endian, no padding, 29-byte header):
//   char[4] "BOGL" | u32 version (=1) | u32 N | f64 lambda | f64 time | u8 kind
// followed by N f64 samples (kind 0, real) or 2N f64 interleaved re/im
// samples (kind 1, complex).

#include <filesystem>
#include <iosfwd>
#include <variant>

#include "bogl/spectral.hpp"

namespace bogl::snapshot {

inline constexpr std::uint32_t kVersion = 1;
inline constexpr std::size_t kHeaderBytes = 29;

struct Snapshot {
  double time = 0.0;
  std::variant<RealField, ComplexField> field;
};

void write(std::ostream& os, const RealField& f, double time);
void write(std::ostream& os, const ComplexField& f, double time);
Snapshot read(std::istream& is);

void save(const std::filesystem::path& p, const RealField& f, double time);
void save(const std::filesystem::path& p, const ComplexField& f, double time);
Snapshot load(const std::filesystem::path& p);

}  // namespace bogl::snapshot
