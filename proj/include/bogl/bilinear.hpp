#pragma once

// The gauge bilinear operator, its trilinear pairing and the resonance
// region split, plus ratio probes for the bilinear estimates.
//
// Conventions on a space-time grid (coefficients c(xi, tau) as in
// spacetime.hpp, sigma = tau + |xi| xi):
//   B(w, u)   = d/dx P+hi( d/dx^{-1} w . P- d/dx u ),  P+hi = P+ (1 - eta)
//   I(h, w, u) = sum over D of xi <sigma>^{-1/2} h(xi,tau) xi1^{-1} w(xi1,tau1) xi2 u(xi2,tau2)
//   D = { xi >= 1, xi1 >= 1, xi2 = xi - xi1 <= 0 },  tau2 = tau - tau1.
// I is a plain lattice sum of coefficients (no cell measure). With the
// bilinear pairing <h, B> = sum h(xi,tau) B(xi,tau),
//   <h, B(w, u)> = i I(<sigma>^{1/2} (1 - eta) h, w, u).
// Products are formed on a grid doubled in x and t, which makes the
// coefficient convolution exact; results are truncated to the input grid.

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "bogl/probe_report.hpp"
#include "bogl/spacetime.hpp"

namespace bogl::bilinear {

// ---------------------------------------------------------------- operators

// d/dx^{-1} on fields without content at xi < 1; DomainError otherwise.
SpaceTimeField inverse_derivative(const SpaceTimeField& w);
// P+hi(W . P- d/dx u).
SpaceTimeField gauge_product(const SpaceTimeField& W, const SpaceTimeField& u);
// d/dx P+hi(d/dx^{-1} w . P- d/dx u); w must vanish at xi < 1.
SpaceTimeField bilinear_B(const SpaceTimeField& w, const SpaceTimeField& u);

// Bilinear pairing sum h . B over the lattice.
cplx pairing(const SpaceTimeField& h, const SpaceTimeField& b);

// Fast path: one exact convolution, then a weighted sum over xi >= 1.
cplx trilinear_I(const SpaceTimeField& h, const SpaceTimeField& w, const SpaceTimeField& u);
// Direct quadruple sum. UsageError above kOracleMaxPoints grid points.
inline constexpr std::size_t kOracleMaxPoints = 32 * 32;
cplx trilinear_I_oracle(const SpaceTimeField& h, const SpaceTimeField& w, const SpaceTimeField& u);

// ---------------------------------------------------------------- regions

// Integer lattice tuple (lambda = 1, tau on the integers).
struct FrequencyTuple {
  long xi = 0, xi1 = 0, tau = 0, tau1 = 0;
  long xi2() const { return xi - xi1; }
  long tau2() const { return tau - tau1; }
  long sigma() const { return tau + std::abs(xi) * xi; }
  long sigma1() const { return tau1 + std::abs(xi1) * xi1; }
  long sigma2() const { return tau2() + std::abs(xi2()) * xi2(); }
};

bool in_domain(const FrequencyTuple& t);
// sigma1 + sigma2 - sigma + 2 xi xi2; zero on D.
long resonance_defect(const FrequencyTuple& t);

enum class Region { A, B, C, none };
const char* region_name(Region r);

// Membership in A_{N,N2}, B_{N,N2}, C_{N,N2} with threshold N N2 / 6,
// evaluated as 6|sigma| >= N N2 in integers (ties belong to the >= side).
std::array<bool, 3> region_predicates(const FrequencyTuple& t, long N, long N2);
// DomainError outside D, or when xi is not in shell N or |xi2| not in shell
// N2 (shell N is N/2 <= |.| <= 2N). Returns none only if no predicate holds.
Region classify(const FrequencyTuple& t, long N, long N2);
// Floating-point version for general lattices.
Region classify(double xi, double xi1, double tau, double tau1, double N, double N2);

struct RegionSplit {
  cplx A = 0.0, B = 0.0, C = 0.0;
  cplx total() const { return A + B + C; }
};

// I(h, w, u) split by region: each tuple in D carries the weight
// phi_N(xi) phi_N2(xi2) for every shell pair and is assigned by classify.
// Tuples with xi2 = 0 contribute nothing to I.
RegionSplit split_I(const SpaceTimeField& h, const SpaceTimeField& w, const SpaceTimeField& u);

// ---------------------------------------------------------------- probes

enum class Estimate { bilincrit_X, bilincrit_Ztilde, lemma3, lemma2_leibniz, appendix_bilin, periodic_bilintore };
const char* estimate_name(Estimate e);
Estimate parse_estimate(const std::string& name);  // UsageError on unknown names
inline constexpr std::array<Estimate, 6> kAllEstimates = {Estimate::bilincrit_X,    Estimate::bilincrit_Ztilde,
                                                          Estimate::lemma3,         Estimate::lemma2_leibniz,
                                                          Estimate::appendix_bilin, Estimate::periodic_bilintore};

struct BilinearProbeConfig {
  double s = 0.0;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::size_t n = 32;
  std::size_t M = 256;
  double lambda = 1.0;
  long kmax = 8;  // spatial cutoff of random inputs, in lattice units j
};

// Row ratio = lhs / rhs. For the two bilincrit probes the region columns
// hold the real parts of the A/B/C shares of the pairing with the norming
// dual element of the left-hand side norm (X^{s,-1/2}, resp. Z^{s,-1});
// `pairings` receives the matching totals, which equal the X^{s,-1/2}
// norm, resp. the Z^{s,-1} norm.
ProbeReport estimate_probe(Estimate which, const BilinearProbeConfig& c, std::vector<double>* pairings = nullptr);

// ||J^a (e^{-iF/2} g)||_{L^q} / ((1 + ||u||_{L^2}) ||J^a g||_{L^q}) with
// q = 4, a = s clamped to [0, 1/4].
ProbeReport exp_multiplication_probe(const BilinearProbeConfig& c);

}  // namespace bogl::bilinear
