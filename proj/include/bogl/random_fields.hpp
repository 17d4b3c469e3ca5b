#pragma once

// Seeded random fields. Coefficients are complex Gaussians scaled by
// <xi>^{-decay}, drawn from a Philox stream in a fixed order so other
// implementations can reproduce them: real fields walk j = 0, 1, ..., kmax
// (j = 0 takes a single real deviate unless mean_zero), complex fields walk
// j = -kmax, ..., kmax; each complex value is (z_re + i z_im) / sqrt(2).

#include "bogl/rng.hpp"
#include "bogl/spectral.hpp"

namespace bogl {

struct Spectrum {
  double decay = 1.0;  // r in <xi>^{-r}
  long kmax = -1;      // largest |j| drawn; -1 means up to N/2 - 1
  long kmin = 0;       // smallest |j| drawn (complex: smallest j)
  bool mean_zero = false;
  bool positive_only = false;  // complex fields: only j >= max(kmin, 1)
};

RealField random_real(const SpatialGrid& g, rng::Stream& s, const Spectrum& sp);
ComplexField random_complex(const SpatialGrid& g, rng::Stream& s, const Spectrum& sp);

}  // namespace bogl
