#pragma once

// Empirical ratio probes for the linear estimates in Bourgain spaces.
//
// Time windows are centred: the space-time grid covers [0, T) and physical
// time is t - T/2, so the free group and the Duhamel integral start at the
// middle sample. Random data decays like <xi>^{-r} with r cycling through
// {1/2, 1, 2} by sample index.

#include <cstdint>
#include <vector>

#include "bogl/probe_report.hpp"
#include "bogl/spacetime.hpp"

namespace bogl {

struct LinearProbeConfig {
  std::size_t n = 32;
  double lambda = 1.0;
  std::size_t M = 256;
  double T = 6.283185307179586;
  double s = 0.0;
  long kmax = 8;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::size_t duhamel_refine = 8;  // time refinement for the Duhamel quadrature
};

inline constexpr double kSampleDecays[3] = {0.5, 1.0, 2.0};

// Per-mode Duhamel integral v(t_m) = int_{t_c}^{t_m} U(t_m - t') g(t') dt',
// t_c = T/2. Between fine time nodes the envelope of g is linear and the
// phase e^{-i(t-t')|xi|xi} is integrated exactly; g is first interpolated
// onto a grid `refine` times finer in t.
std::vector<ComplexField> duhamel(const SpaceTimeField& g, std::size_t refine = 8);

// The two closed-form step integrals, signed h, p = |xi| xi:
//   I0 = int_0^h e^{-iup} du,  I1 = int_0^h u e^{-iup} du.
cplx duhamel_i0(double h, double p);
cplx duhamel_i1(double h, double p);

// ||eta U(t) f||_{Y^s} / ||f||_{H^s}.
ProbeReport homogeneous_probe(const LinearProbeConfig& c);
// ||eta Duhamel(g)||_{Y^s} / (||g||_{X^{s,-1/2}} + ||g||_{Z~^{s,-1}}).
ProbeReport duhamel_y_probe(const LinearProbeConfig& c);
// ||eta Duhamel(g)||_{X^{s,1/2+d}} / ||g||_{X^{s,-1/2+d}}, d = 1/4.
ProbeReport duhamel_x_probe(const LinearProbeConfig& c);
// max over T in {1, 1/2, 1/4, 1/8} of ||u||_{X^{s,b'}_T} / (T^{b-b'} ||u||_{X^{s,b}_T}),
// b' = -1/4, b = 1/4, with the windowed extension standing in for the
// restriction norm.
ProbeReport time_localization_probe(const LinearProbeConfig& c);
// ||u||_{L^4} / ||u||_{X^{0,3/8}}.
ProbeReport strichartz_probe(const LinearProbeConfig& c);
// sup_t ||u(t)||_{H^s} / ||u||_{Z^{s,0}}.
ProbeReport embedding_probe(const LinearProbeConfig& c);

std::vector<ProbeReport> linear_probes(const LinearProbeConfig& c);

}  // namespace bogl
