#pragma once

// Quadrature of int <y>^{-2a-} <y - mu>^{-2a+} dy over the real line, with
// <x> = 1 + |x|, and the ratio probe against <mu>^{-s}.

#include <vector>

#include "bogl/probe_report.hpp"

namespace bogl::calculus {

// Decay exponent s for 0 < a- <= a+, a- + a+ > 1/2:
//   2a-            if a+ > 1/2
//   2a- - eps      if a+ = 1/2
//   2(a+ + a-) - 1 if a+ < 1/2
// DomainError outside that range or for eps <= 0.
double exponent(double a_minus, double a_plus, double eps = 1e-3);

// Adaptive Gauss-Kronrod on the segment between 0 and mu, double-exponential
// rules on the two tails. tol is relative.
double integral(double a_minus, double a_plus, double mu, double tol = 1e-13);

// Symmetric sweep: 0 and +-mu for `points` log-spaced |mu| in [1e-2, max_abs].
struct MuSweep {
  double max_abs = 1e4;
  std::size_t points = 40;
};
std::vector<double> sweep_values(const MuSweep& sweep);

// Rows: lhs = integral, rhs = <mu>^{-s}, one per sweep value.
ProbeReport calculus_lemma_check(double a_minus, double a_plus, const MuSweep& sweep = {}, double tol = 1e-13,
                                 double eps = 1e-3);

}  // namespace bogl::calculus
