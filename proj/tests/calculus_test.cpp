#include <cmath>

#include "bogl/calculus.hpp"
#include "bogl/errors.hpp"
#include "doctest.h"

using namespace bogl;

namespace {
// a- = a+ = 1 by partial fractions, mu > 0.
double closed_form_11(double mu) {
  const double c = 1.0 + mu, S = 2.0 + mu;
  const double tail = (1.0 + 1.0 / c - 2.0 / mu * std::log(c)) / (mu * mu);
  const double middle = (2.0 * (1.0 - 1.0 / c) + 4.0 / S * std::log(c)) / (S * S);
  return 2.0 * tail + middle;
}
}  // namespace

TEST_CASE("closed forms") {
  CHECK(std::abs(calculus::integral(1.0, 1.0, 0.0) - 2.0 / 3.0) < 1e-10);
  // a- + a+ = 1: int <y>^{-2} = 2 at mu = 0.
  CHECK(calculus::integral(0.5, 0.5, 0.0) == doctest::Approx(2.0).epsilon(1e-10));
  for (double mu : {1.0, 3.5, 40.0, 1e3, 1e4}) {
    CHECK(calculus::integral(1.0, 1.0, mu) == doctest::Approx(closed_form_11(mu)).epsilon(1e-10));
    CHECK(calculus::integral(1.0, 1.0, -mu) == doctest::Approx(closed_form_11(mu)).epsilon(1e-10));
  }
}

TEST_CASE("exponent case split") {
  CHECK(calculus::exponent(0.4, 0.6) == 0.8);
  CHECK(calculus::exponent(0.4, 0.5, 1e-3) == doctest::Approx(0.799));
  CHECK(calculus::exponent(0.3, 0.4) == doctest::Approx(0.4));
  CHECK_THROWS_AS(calculus::exponent(0.6, 0.4), DomainError);
  CHECK_THROWS_AS(calculus::exponent(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(calculus::exponent(0.2, 0.3), DomainError);
  CHECK_THROWS_AS(calculus::exponent(0.4, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(calculus::integral(0.2, 0.2, 1.0), DomainError);
}

TEST_CASE("sweep ratio is finite and stable under refinement") {
  const auto coarse = calculus::calculus_lemma_check(1.0, 1.0, {1e4, 40}, 1e-8);
  const auto fine = calculus::calculus_lemma_check(1.0, 1.0, {1e4, 40}, 1e-14);
  REQUIRE(coarse.rows.size() == 81);
  CHECK(std::isfinite(fine.summary().sup));
  CHECK(fine.summary().sup == doctest::Approx(coarse.summary().sup).epsilon(1e-7));
  // <mu>^2 times the integral tends to 2 int <y>^{-2} = 4.
  CHECK(fine.summary().sup < 4.0);
  CHECK(fine.rows.back().ratio == doctest::Approx(4.0).epsilon(5e-3));
}

TEST_CASE("ratios stay bounded in each regime") {
  for (auto [am, ap] : {std::pair{0.3, 0.9}, {0.4, 0.5}, {0.3, 0.35}}) {
    const auto r = calculus::calculus_lemma_check(am, ap, {1e4, 30});
    const auto r2 = calculus::calculus_lemma_check(am, ap, {1e5, 30});
    CHECK(r.skipped == 0);
    CHECK(r2.summary().sup < 1.5 * r.summary().sup);
  }
}
