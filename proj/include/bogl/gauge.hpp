#pragma once

// Periodic gauge transform of a mean-zero solution u:
//   F = zero-mean primitive of u,  W = P+(e^{-iF/2}),  w = W_x = -(i/2) P+(e^{-iF/2} u).
// Products with e^{+-iF/2} are formed on a grid refined by `oversample` and
// truncated back, since the exponential is not band-limited.

#include <vector>

#include "bogl/dynamics.hpp"
#include "bogl/spectral.hpp"

namespace bogl::gauge {

struct Options {
  std::size_t oversample = 4;
};

// (u0 - mean, mean).
std::pair<RealField, double> mean_zero_reduce(const RealField& u0);

// f(x - s).
RealField translate(const RealField& f, double s);

// u~(t, x) = u(t, x - m t) - m with m the (conserved) mean; u~ solves the
// same equation and has mean zero. ungauge_trajectory undoes it.
Trajectory reduce_trajectory(const Trajectory& tr, double* mean = nullptr);
Trajectory ungauge_trajectory(const Trajectory& reduced, double mean);

// Zero-mean F with F_x = u; DomainError if u has nonzero mean.
RealField primitive(const RealField& u);

struct GaugeState {
  RealField u_tilde;
  RealField F;
  ComplexField W;
  ComplexField w;
  double mean_shift = 0.0;
  double time = 0.0;
};

// Applies mean_zero_reduce first; mean_shift records the removed mean.
GaugeState gauge(const RealField& u, double time = 0.0, const Options& o = {});
ComplexField gauge_W(const RealField& u, const Options& o = {});
ComplexField gauge_w(const RealField& u, const Options& o = {});
// -(i/2) P+(e^{-iF/2} u), the product form of w.
ComplexField gauge_w_product(const RealField& u, const Options& o = {});

// Right side of w_t - i w_xx = -d/dx P+(W P-(u_x)) + (i/4) P0(F_x^2) w.
ComplexField gauge_rhs(const RealField& u, const Options& o = {}, bool with_mean_term = true);

struct ResidualRow {
  double t = 0.0;
  double residual = 0.0;   // L2 norm of LHS - RHS
  double mean_term = 0.0;  // L2 norm of (i/4) P0(F_x^2) w
};

// Residuals at interior snapshots, w_t by centred differences; snapshot
// times must be equally spaced. UsageError with fewer than 3 snapshots.
std::vector<ResidualRow> gauge_residual(const Trajectory& tr, const Options& o = {}, bool with_mean_term = true);

struct Reconstruction {
  ComplexField lhs;  // P+HI u
  ComplexField rhs;  // identity evaluated from w, F
  double rel_gap = 0.0;
};

// P+HI u = 2i P+HI(E w) + P+HI(P+E . P0(G u)) + 2i P+HI(P+E . d/dx P-G),
// E = e^{iF/2}, G = e^{-iF/2}.
Reconstruction reconstruct_high(const RealField& u, const Options& o = {});

// (||F1 - F2||_Linf, ||u1 - u2||_L2). With same_low set, DomainError unless
// P_LO u1 = P_LO u2.
std::pair<double, double> primitive_gap(const RealField& u1, const RealField& u2, bool same_low = false);

// ||J^a (e^{-iF/2} g)||_Lq / ((1 + ||u||_L2) ||J^a g||_Lq), F = primitive(u).
double exp_multiplication_ratio(const RealField& u, const ComplexField& g, double alpha, int q,
                                const Options& o = {});

}  // namespace bogl::gauge
