#include <cmath>

#include "bogl/littlewood_paley.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bogl;

namespace {
// Independent evaluation of the profile for the oracle checks.
double eta_oracle(double xi) {
  const double t = 2.0 - std::abs(xi);
  if (t <= 0) return 0;
  if (t >= 1) return 1;
  const double a = std::exp(-1 / t), b = std::exp(-1 / (1 - t));
  return a / (a + b);
}
}  // namespace

TEST_CASE("eta profile") {
  CHECK(lp::eta(0.5) == 1.0);
  CHECK(lp::eta(1.0) == 1.0);
  CHECK(lp::eta(3.0) == 0.0);
  CHECK(lp::eta(2.0) == 0.0);
  for (double xi = 0; xi < 3; xi += 0.0173) {
    CHECK(lp::eta(-xi) == lp::eta(xi));
    CHECK(lp::eta(xi) >= 0.0);
    CHECK(lp::eta(xi) <= 1.0);
    CHECK(std::abs(lp::eta(xi) - eta_oracle(xi)) < 1e-15);
  }
  // phi_N vanishes off N/2 <= |xi| <= 2N.
  for (double N : {1.0, 2.0, 8.0})
    for (double xi = 0; xi < 5 * N; xi += N / 64) {
      if (xi < N / 2 || xi > 2 * N) CHECK(lp::phi_N(xi, N) == 0.0);
    }
}

TEST_CASE("partition of unity on lattices") {
  for (double lambda : {1.0, 2.0, 4.0}) {
    auto g = make_grid(1024, lambda);
    const auto Ns = lp::shells(g);
    for (double xi : g.xis()) {
      if (xi == 0) continue;
      double s = lp::eta(2 * xi);
      for (double N : Ns) s += lp::phi_N(xi, N);
      CHECK(std::abs(s - 1) <= 1e-12);
    }
  }
}

TEST_CASE("decompose e^{3ix}") {
  auto g = make_grid(64);
  auto f = ComplexField::from_function(g, [](double x) { return std::polar(1.0, 3 * x); });
  auto d = lp::decompose(f);
  CHECK(lebesgue_norm(d.low, 2) < 1e-15);
  const double p2 = eta_oracle(1.5) - eta_oracle(3.0), p4 = eta_oracle(0.75) - eta_oracle(1.5);
  CHECK(p2 + p4 == doctest::Approx(1.0));
  for (const auto& [N, s] : d.shells) {
    const double expect = N == 2 ? p2 : N == 4 ? p4 : 0.0;
    CHECK(std::abs(s.coeff(3) - expect) < 1e-14);
  }
  CHECK(relative_gap(d.sum(), f) < 1e-15);
}

TEST_CASE("constant field lives in the low part") {
  auto g = make_grid(32);
  auto c = RealField::from_function(g, [](double) { return 2.5; });
  auto d = lp::decompose(c);
  CHECK(relative_gap(d.low, c) == 0.0);
  for (const auto& [N, s] : d.shells) CHECK(lebesgue_norm(s, 2) == 0.0);
}

TEST_CASE("reconstruction and shell supports") {
  auto g = make_grid(256, 2);
  auto f = testutil::random_real(g, 77);
  auto d = lp::decompose(f);
  CHECK(relative_gap(d.sum(), f) <= 1e-12);
  for (const auto& [N, fN] : d.shells)
    for (double M : lp::shells(g)) {
      if (M == N / 2 || M == N || M == 2 * N) continue;
      CHECK(lebesgue_norm(project_real(fN, {Proj::dyadic, M}), 2) == 0.0);
    }
}

TEST_CASE("tilde L^p norm") {
  auto g = make_grid(64);
  CHECK(lp::tilde_lp_norm(RealField(g), 2) == 0.0);
  // Pure mode at xi = 1: Plo carries eta(1) = 1 and phi_1(1) = 1 - eta(2) = 1.
  auto c1 = RealField::from_function(g, [](double x) { return std::cos(x); });
  CHECK(lp::tilde_lp_norm(c1, 2) == doctest::Approx(2 * lebesgue_norm(c1, 2)));
  // Mode at xi = 16 sits only in shell 16.
  auto c16 = RealField::from_function(g, [](double x) { return std::cos(16 * x); });
  CHECK(lp::tilde_lp_norm(c16, 2) == doctest::Approx(lebesgue_norm(c16, 2)).epsilon(1e-14));
  double worst = 0;
  for (unsigned s = 0; s < 20; ++s) {
    auto f = testutil::random_real(g, s, 31, 0.5);
    for (int p : {2, 4}) worst = std::max(worst, lebesgue_norm(f, p) / lp::tilde_lp_norm(f, p));
  }
  MESSAGE("sup ||f||_Lp / ||f||_~Lp = " << worst);
  // The embedding constant is reported; shells overlap so it need not be 1.
  CHECK(worst < 2.0);
}
