#include <cmath>
#include <numbers>

#include "bogl/errors.hpp"
#include "bogl/spectral.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bogl;
using std::numbers::pi;

namespace {
RealField cosx(const SpatialGrid& g, double k = 1.0) {
  return RealField::from_function(g, [k](double x) { return std::cos(k * x); });
}
RealField sinx(const SpatialGrid& g, double k = 1.0) {
  return RealField::from_function(g, [k](double x) { return std::sin(k * x); });
}
}  // namespace

TEST_CASE("make_grid") {
  auto g = make_grid(8, 1);
  CHECK(g.dx() == doctest::Approx(pi / 4));
  CHECK(g.xi(0) == 0);
  CHECK(g.xi(4) == -4);
  CHECK(g.xi(3) == 3);
  CHECK(g.dx() * 8 == g.length());
  auto g2 = make_grid(8, 2);
  CHECK(g2.xi(4) == -2);
  CHECK(g2.xi(1) == 0.5);
  CHECK(g2.xi(3) == 1.5);
  CHECK(make_grid(256, 1).length() == doctest::Approx(2 * pi));
  CHECK_THROWS_AS(make_grid(12, 1), DomainError);
  CHECK_THROWS_AS(make_grid(4, 1), DomainError);
  CHECK_THROWS_AS(make_grid(64, 0.5), DomainError);
}

TEST_CASE("real field invariants") {
  auto g = make_grid(64);
  auto f = testutil::random_real(g, 3);
  CHECK(f.coeffs()[32] == cplx(0));
  for (std::size_t k = 1; k < 32; ++k) CHECK(std::abs(f.coeffs()[k] - std::conj(f.coeffs()[64 - k])) < 1e-15);
  auto back = RealField::from_samples(g, std::span<const double>(f.real_samples()));
  CHECK(relative_gap(f, back) < 1e-12);
}

TEST_CASE("hilbert") {
  auto g = make_grid(32);
  CHECK(testutil::max_coeff_diff(hilbert(cosx(g)), sinx(g)) < 1e-15);
  CHECK(testutil::max_coeff_diff(hilbert(sinx(g)), -1.0 * cosx(g)) < 1e-15);
  auto c = RealField::from_function(g, [](double) { return 3.0; });
  CHECK(lebesgue_norm(hilbert(c), kLinf) == 0.0);
}

TEST_CASE("projections") {
  auto g = make_grid(64);
  auto p = project(cosx(g), {Proj::plus});
  CHECK(std::abs(p.coeff(1) - 0.5) < 1e-15);
  CHECK(std::abs(p.coeff(-1)) == 0.0);
  auto f = testutil::random_real(g, 5);
  CHECK(relative_gap(project_real(f, {Proj::lo}) + project_real(f, {Proj::hi}), f) < 1e-15);
  CHECK(relative_gap(project_real(f, {Proj::LO}) + project_real(f, {Proj::HI}), f) < 1e-15);
  auto fz = testutil::mean_zero(f);
  auto h = to_complex(hilbert(fz));
  auto alt = scale(project(fz, {Proj::plus}), cplx(0, -1)) + scale(project(fz, {Proj::minus}), cplx(0, 1));
  CHECK(relative_gap(h, alt) < 1e-14);
  // P+ + P- + P0 = Id, idempotence, P+hi = P+ Phi = Phi P+
  auto cf = to_complex(f);
  auto sum = project(cf, {Proj::plus}) + project(cf, {Proj::minus}) + project(cf, {Proj::mean});
  CHECK(testutil::max_coeff_diff(sum, cf) == 0.0);
  for (Proj w : {Proj::plus, Proj::minus, Proj::mean}) {
    auto once = project(cf, {w});
    CHECK(testutil::max_coeff_diff(project(once, {w}), once) == 0.0);
  }
  auto a = project(project(cf, {Proj::plus}), {Proj::hi});
  auto b = project(project(cf, {Proj::hi}), {Proj::plus});
  auto c = project(cf, {Proj::plus_hi});
  CHECK(relative_gap(a, c) < 1e-15);
  CHECK(relative_gap(b, c) < 1e-15);
  CHECK(relative_gap(project(cf, {Proj::plus_HI}), project(project(cf, {Proj::HI}), {Proj::plus})) < 1e-15);
  CHECK(relative_gap(project(cf, {Proj::minus_hi}), project(project(cf, {Proj::hi}), {Proj::minus})) < 1e-15);
  CHECK_THROWS_AS(project(cf, {Proj::dyadic, 3.0}), DomainError);
  CHECK_THROWS_AS(project_real(f, {Proj::plus}), DomainError);
}

TEST_CASE("fractional potentials") {
  auto g = make_grid(32);
  CHECK(relative_gap(fractional(cosx(g), Potential::bessel, 1), std::sqrt(2.0) * cosx(g)) < 1e-14);
  CHECK(relative_gap(fractional(cosx(g), Potential::riesz, 0.5), cosx(g)) < 1e-15);
  auto f = testutil::random_real(g, 9);
  CHECK(relative_gap(fractional(f, Potential::riesz, 0), f) == 0.0);
  CHECK_THROWS_AS(fractional(f, Potential::riesz, -0.5), DomainError);
  CHECK_NOTHROW(fractional(testutil::mean_zero(f), Potential::riesz, -0.5));
}

TEST_CASE("free propagation") {
  auto g = make_grid(32);
  auto e2 = ComplexField::from_function(g, [](double x) { return std::polar(1.0, 2 * x); });
  auto p = free_propagate(e2, 0.5);
  CHECK(std::abs(p.coeff(2) - std::polar(1.0, -2.0)) < 1e-14);
  auto f = testutil::random_complex(g, 11);
  CHECK(relative_gap(free_propagate(f, 0.0), f) == 0.0);
  CHECK(relative_gap(free_propagate(free_propagate(f, 0.37), -0.37), f) < 1e-13);
  CHECK(std::abs(sobolev_norm(free_propagate(f, 1.7), 0) / sobolev_norm(f, 0) - 1) < 1e-13);
}

TEST_CASE("Lebesgue and Sobolev norms") {
  auto g = make_grid(64);
  CHECK(lebesgue_norm(cosx(g), 2) == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
  CHECK(lebesgue_norm(RealField::from_function(g, [](double) { return 1.0; }), kLinf) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::pow(lebesgue_norm(cosx(g), 4), 4) == doctest::Approx(3 * pi / 4).epsilon(1e-13));
  CHECK(sobolev_norm(cosx(g), 0) == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
  // Direct coefficient-sum oracle for H^1: modes +-1 carry 1/2 each, weight 1 + 1 = 2.
  double oracle = 0.0;
  for (double c : {0.5, 0.5}) oracle += 2.0 * c * c;
  oracle = std::sqrt(2 * pi * oracle);
  CHECK(sobolev_norm(cosx(g), 1) == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(oracle == doctest::Approx(std::sqrt(2 * pi)));
  CHECK(sobolev_norm(RealField(g), 2.0) == 0.0);
}

TEST_CASE("Plancherel, round trip and H^2 = -Id") {
  for (std::size_t n : {64u, 256u, 1024u}) {
    CAPTURE(n);
    auto g = make_grid(n, n == 256 ? 2.0 : 1.0);
    auto f = testutil::random_real(g, static_cast<unsigned>(n));
    const double l2 = lebesgue_norm(f, 2);
    double s = 0.0;
    for (auto c : f.coeffs()) s += std::norm(c);
    CHECK(std::abs(l2 * l2 / (g.length() * s) - 1) < 1e-12);
    auto fz = testutil::mean_zero(f);
    CHECK(relative_gap(hilbert(hilbert(fz)), -1.0 * fz) < 1e-12);
    auto cf = testutil::random_complex(g, 7);
    auto back = ComplexField::from_samples(g, std::span<const cplx>(cf.samples()));
    CHECK(relative_gap(back, cf) < 1e-12);
  }
}

TEST_CASE("multipliers commute and compose") {
  auto g = make_grid(128, 2);
  auto f = testutil::random_complex(g, 21);
  const Multiplier ms[] = {symbols::hilbert(), symbols::riesz(0.5), symbols::bessel(-1.0),
                           symbols::free_group(0.3), projection_symbol({Proj::plus_hi}),
                           projection_symbol({Proj::dyadic, 4})};
  for (const auto& a : ms)
    for (const auto& b : ms) {
      auto ab = apply(a, apply(b, f)), ba = apply(b, apply(a, f));
      CHECK(relative_gap(ab, ba) < 1e-13);
      CHECK(relative_gap(ab, apply(compose(a, b), f)) < 1e-13);
    }
}

TEST_CASE("refine and truncate") {
  auto g = make_grid(32);
  auto f = testutil::random_real(g, 2);
  auto fine = refine(f, 4);
  CHECK(fine.size() == 128);
  CHECK(std::abs(lebesgue_norm(fine, 2) / lebesgue_norm(f, 2) - 1) < 1e-13);
  CHECK(relative_gap(truncate(fine, g), f) == 0.0);
}
