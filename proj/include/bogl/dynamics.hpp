#pragma once

// Time integration of u_t + H u_xx = u u_x on R / 2 pi lambda Z.
//
// In Fourier variables u_t = L u + N(u) with L(xi) = -i |xi| xi and
// N(u) = (1/2) d/dx (u^2), dealiased by the truncation rule |j| <= dealias * N/2
// on both the input and the product. Steps use ETDRK4 (Cox-Matthews) with
// the phi-function coefficients evaluated by contour means.

#include <cstdint>
#include <vector>

#include "bogl/spectral.hpp"

namespace bogl {

struct SimConfig {
  SpatialGrid grid;
  double dt = 1e-3;
  double t_end = 1.0;
  double dealias = 2.0 / 3.0;
  std::size_t snapshot_stride = 1;
  std::uint64_t seed = 0;
};

struct Diagnostics {
  double t = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
  double linf = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<RealField> states;
  std::vector<Diagnostics> diagnostics;
};

// Coefficient mask of the dealiasing rule.
std::vector<double> dealias_mask(const SpatialGrid& g, double dealias);

RealField nonlinearity(const RealField& u, double dealias = 2.0 / 3.0);

// M(u) = int u^2.
double momentum(const RealField& u);
// E(u) = 1/2 int |D^{1/2} u|^2 - 1/6 int u^3, the invariant of this sign convention.
double energy(const RealField& u);
Diagnostics diagnose(const RealField& u, double t);

class EtdStepper {
 public:
  // linear_only drops N(u); only then may dt be negative.
  EtdStepper(const SpatialGrid& g, double dt, double dealias = 2.0 / 3.0, bool linear_only = false,
             int contour_points = 64);
  // Advances u by dt. t is only used to label an IntegrationFailure.
  RealField step(const RealField& u, double t = 0.0) const;
  double dt() const { return dt_; }

 private:
  void rhs(const std::vector<cplx>& v, std::vector<cplx>& out) const;
  SpatialGrid grid_;
  double dt_;
  bool linear_only_;
  std::vector<double> mask_;
  std::vector<cplx> e_, e2_, q_, f1_, f2_, f3_, half_dx_;
};

RealField step(const RealField& u, double dt, double dealias = 2.0 / 3.0);

// Fixed-step run; records states and diagnostics every snapshot_stride steps
// and at t_end.
Trajectory simulate(const RealField& u0, const SimConfig& cfg);

// u_lambda(x) = lambda u0(lambda x) for dyadic lambda = 2^k. The grid keeps N
// points and its period scale becomes lambda0 / lambda, which must stay >= 1.
RealField rescale(const RealField& u0, double lambda);

}  // namespace bogl
