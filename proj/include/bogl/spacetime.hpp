#pragma once

// Space-time fields on (R / 2 pi lambda Z) x [0, T) and the Bourgain-type norms.
//
// Samples u(x_j, t_m), t_m = m T / M, are transformed with the 2-D analogue of
// the spatial convention, c(xi, tau) = (1/(NM)) sum u e^{-i(xi x + tau t)},
// tau_m = 2 pi m / T in FFT order. With LT = 2 pi lambda T:
//   X^{s,b}:  ||u||^2 = LT sum_{xi,tau} <sigma>^{2b} <xi>^{2s} |c|^2
//   Z^{s,b}:  ||u||^2 = LT sum_xi (sum_tau <sigma>^b <xi>^s |c|)^2
//   Z~^{s,b}: ||P_lo u||_Z + (sum_N ||P_N u||_Z^2)^{1/2}
//   Y^s = X^{s,1/2} + Z~^{s,0}
// where sigma = tau + |xi| xi and <x> = 1 + |x|. For s = b = 0 the X norm is
// the space-time L^2 norm of the samples.

#include <functional>
#include <vector>

#include "bogl/dynamics.hpp"
#include "bogl/rng.hpp"
#include "bogl/spectral.hpp"

namespace bogl {

struct SpaceTimeGrid {
  SpatialGrid spatial;
  std::size_t M = 0;
  double T = 0.0;

  std::size_t size() const { return M * spatial.size(); }
  double dt() const { return T / static_cast<double>(M); }
  double t(std::size_t m) const { return dt() * static_cast<double>(m); }
  double tau(std::size_t m) const;
  long time_index(std::size_t m) const;
  double measure() const { return spatial.length() * T; }
  friend bool operator==(const SpaceTimeGrid& a, const SpaceTimeGrid& b) {
    return a.spatial == b.spatial && a.M == b.M && a.T == b.T;
  }
};

// M power of two >= 16, T > 0.
SpaceTimeGrid make_spacetime_grid(const SpatialGrid& g, std::size_t M, double T);

// eta(4 (t - span/2) / width): plateau on the central width/2, support width.
double time_window(double t, double span, double width);

// Row-major storage, row m = time slot, column k = spatial slot.
class SpaceTimeField {
 public:
  SpaceTimeField() = default;
  explicit SpaceTimeField(SpaceTimeGrid g) : grid_(std::move(g)), c_(grid_.size()) {}
  SpaceTimeField(SpaceTimeGrid g, std::vector<cplx> coeffs);

  static SpaceTimeField from_samples(const SpaceTimeGrid& g, std::span<const cplx> samples);

  const SpaceTimeGrid& grid() const { return grid_; }
  const std::vector<cplx>& coeffs() const { return c_; }
  std::vector<cplx>& mutable_coeffs() { return c_; }
  // By signed spatial index j and temporal index m; 0 outside the grid.
  cplx coeff(long j, long m) const;
  std::vector<cplx> samples() const;
  ComplexField slice(std::size_t m) const;

  SpaceTimeField& operator+=(const SpaceTimeField& o);
  SpaceTimeField& operator-=(const SpaceTimeField& o);
  SpaceTimeField& operator*=(cplx a);

 private:
  SpaceTimeGrid grid_;
  std::vector<cplx> c_;
};

inline SpaceTimeField operator+(SpaceTimeField a, const SpaceTimeField& b) { return a += b; }
inline SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b) { return a -= b; }

// Slices u(t_m) (one per time sample), multiplied by the window when width > 0.
SpaceTimeField from_slices(const SpaceTimeGrid& g, const std::vector<ComplexField>& slices, double width);
// Windowed lift of a trajectory; its times must match t_m for m < M.
SpaceTimeField lift(const Trajectory& tr, const SpaceTimeGrid& g, double width = -1.0);

double x_norm(const SpaceTimeField& f, double s, double b);
double z_norm(const SpaceTimeField& f, double s, double b);
double z_tilde_norm(const SpaceTimeField& f, double s, double b);
double y_norm(const SpaceTimeField& f, double s);
// Space-time Lebesgue norm, p in {2, 4}; p = 4 is evaluated alias-free on a 2x grid.
double st_lebesgue(const SpaceTimeField& f, int p);
// sup over time samples of the H^s norm of the slices.
double sup_sobolev(const SpaceTimeField& f, double s);

// Spatial multiplier applied at every time.
SpaceTimeField apply(const Multiplier& m, const SpaceTimeField& f);
SpaceTimeField project(const SpaceTimeField& f, Projection p);
// Diagonal weight w(xi, tau) on the coefficients.
SpaceTimeField weight(const SpaceTimeField& f, const std::function<cplx(double xi, double tau)>& w);

// Zero-padded copy on (fx N) x (ft M) points with the same period T; truncate
// keeps |j| < N/2, |m| < M/2 of the target grid.
SpaceTimeField refine(const SpaceTimeField& f, std::size_t fx, std::size_t ft);
SpaceTimeField truncate(const SpaceTimeField& f, const SpaceTimeGrid& coarse);
// Pointwise product of samples on the common grid.
SpaceTimeField multiply(const SpaceTimeField& a, const SpaceTimeField& b);

struct SpaceTimeSpectrum {
  double decay_xi = 1.0;     // <xi>^{-r}
  double decay_sigma = 1.0;  // <sigma>^{-beta}
  long kmax = -1;            // |j| <= kmax (default N/2 - 1)
  long mmax = -1;            // |m| <= mmax (default M/2 - 1)
  bool real = true;          // Hermitian symmetrise
  bool positive_only = false;  // keep xi >= 1 only (overrides real)
};

// Complex Gaussian coefficients with the requested decay, drawn slot by slot
// in row-major FFT order.
SpaceTimeField random_spacetime(const SpaceTimeGrid& g, rng::Stream& s, const SpaceTimeSpectrum& sp);

}  // namespace bogl
