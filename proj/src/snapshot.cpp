#include "bogl/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "bogl/errors.hpp"

namespace bogl::snapshot {
namespace {

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

template <class T>
void put(std::ostream& os, T v) {
  char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  os.write(b, sizeof(T));
}

template <class T>
T get(std::istream& is) {
  char b[sizeof(T)];
  if (!is.read(b, sizeof(T))) throw UsageError("truncated snapshot");
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

void header(std::ostream& os, const SpatialGrid& g, double time, FieldKind kind) {
  os.write("BOGL", 4);
  put<std::uint32_t>(os, kVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.size()));
  put<double>(os, g.lambda());
  put<double>(os, time);
  put<std::uint8_t>(os, static_cast<std::uint8_t>(kind));
}

}  // namespace

void write(std::ostream& os, const RealField& f, double time) {
  header(os, f.grid(), time, FieldKind::real);
  for (double v : f.real_samples()) put<double>(os, v);
  if (!os) throw UsageError("snapshot write failed");
}

void write(std::ostream& os, const ComplexField& f, double time) {
  header(os, f.grid(), time, FieldKind::complex);
  for (cplx v : f.samples()) {
    put<double>(os, v.real());
    put<double>(os, v.imag());
  }
  if (!os) throw UsageError("snapshot write failed");
}

Snapshot read(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "BOGL", 4) != 0) throw UsageError("not a BOGL snapshot");
  const auto version = get<std::uint32_t>(is);
  if (version != kVersion) throw UsageError("unsupported snapshot version " + std::to_string(version));
  const auto n = get<std::uint32_t>(is);
  const auto lambda = get<double>(is);
  const auto time = get<double>(is);
  const auto kind = get<std::uint8_t>(is);
  const auto g = make_grid(n, lambda);
  if (kind == static_cast<std::uint8_t>(FieldKind::real)) {
    std::vector<double> s(n);
    for (auto& v : s) v = get<double>(is);
    return {time, RealField::from_samples(g, std::span<const double>(s))};
  }
  if (kind == static_cast<std::uint8_t>(FieldKind::complex)) {
    std::vector<cplx> s(n);
    for (auto& v : s) {
      const double re = get<double>(is);
      v = {re, get<double>(is)};
    }
    return {time, ComplexField::from_samples(g, std::span<const cplx>(s))};
  }
  throw UsageError("unknown snapshot kind " + std::to_string(kind));
}

void save(const std::filesystem::path& p, const RealField& f, double time) {
  std::ofstream os(p, std::ios::binary);
  write(os, f, time);
}

void save(const std::filesystem::path& p, const ComplexField& f, double time) {
  std::ofstream os(p, std::ios::binary);
  write(os, f, time);
}

Snapshot load(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  if (!is) throw UsageError("cannot open " + p.string());
  return read(is);
}

}  // namespace bogl::snapshot
