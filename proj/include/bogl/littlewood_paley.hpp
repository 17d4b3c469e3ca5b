#pragma once

// Smooth cutoff eta, dyadic bumps phi_N and shell decompositions.
//
// eta(xi) = s(2 - |xi|) with the smooth step s(t) = g(t) / (g(t) + g(1 - t)),
// g(t) = exp(-1/t) for t > 0 and 0 otherwise. So eta = 1 on [-1, 1] and
// vanishes outside [-2, 2]. phi(xi) = eta(xi) - eta(2 xi), phi_N(xi) = phi(xi/N).

#include <vector>

#include "bogl/spectral.hpp"

namespace bogl::lp {

inline constexpr const char* kProfileName = "smoothstep-exp";

double eta(double xi);
double phi(double xi);
double phi_N(double xi, double N);

// Dyadic N = 1, 2, 4, ... up to the smallest dyadic >= the largest |xi| on the grid.
std::vector<double> shells(const SpatialGrid& g);

template <FieldKind K>
struct LPDecomposition {
  Field<K> low;  // eta(2 xi) part
  std::vector<std::pair<double, Field<K>>> shells;
  Field<K> sum() const;
};

template <FieldKind K>
LPDecomposition<K> decompose(const Field<K>& f);

// ||P_lo f||_{L^p} + (sum_N ||P_N f||_{L^p}^2)^{1/2}, p in {2, 4}.
template <FieldKind K>
double tilde_lp_norm(const Field<K>& f, int p);

}  // namespace bogl::lp
