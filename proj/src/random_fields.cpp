#include "bogl/random_fields.hpp"

#include <cmath>

#include "bogl/fft.hpp"

namespace bogl {
namespace {

long top(const SpatialGrid& g, long kmax) {
  const long half = static_cast<long>(g.size() / 2) - 1;
  return kmax < 0 ? half : std::min(kmax, half);
}

cplx draw(rng::Stream& s) {
  const double re = s.normal();
  return cplx(re, s.normal()) * M_SQRT1_2;
}

double weight(const SpatialGrid& g, long j, double decay) {
  return std::pow(1.0 + std::abs(static_cast<double>(j)) / g.lambda(), -decay);
}

}  // namespace

RealField random_real(const SpatialGrid& g, rng::Stream& s, const Spectrum& sp) {
  std::vector<cplx> c(g.size());
  const long K = top(g, sp.kmax);
  if (!sp.mean_zero && sp.kmin <= 0) c[0] = s.normal();
  for (long j = std::max(1L, sp.kmin); j <= K; ++j) {
    const cplx v = draw(s) * weight(g, j, sp.decay);
    c[fft::slot(j, g.size())] = v;
    c[fft::slot(-j, g.size())] = std::conj(v);
  }
  return RealField(g, std::move(c));
}

ComplexField random_complex(const SpatialGrid& g, rng::Stream& s, const Spectrum& sp) {
  std::vector<cplx> c(g.size());
  const long K = top(g, sp.kmax);
  const long lo = sp.positive_only ? std::max(1L, sp.kmin) : -K;
  for (long j = lo; j <= K; ++j) {
    if (!sp.positive_only && std::abs(j) < sp.kmin) continue;
    if (j == 0 && sp.mean_zero) continue;
    c[fft::slot(j, g.size())] = draw(s) * weight(g, j, sp.decay);
  }
  return ComplexField(g, std::move(c));
}

}  // namespace bogl
