#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bogl/fft.hpp"
#include "bogl/linear_probes.hpp"
#include "bogl/littlewood_paley.hpp"
#include "doctest.h"

using namespace bogl;
using boost::math::quadrature::gauss;

namespace {
constexpr double kPi = std::numbers::pi;

// Composite fixed-order Gauss-Legendre rule.
template <class Fn>
cplx integrate(Fn&& f, double a, double b, int panels = 64) {
  cplx sum = 0.0;
  const double w = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * w;
    sum += cplx(gauss<double, 30>::integrate([&](double t) { return f(t).real(); }, lo, lo + w),
                gauss<double, 30>::integrate([&](double t) { return f(t).imag(); }, lo, lo + w));
  }
  return sum;
}

LinearProbeConfig small(std::size_t samples = 6) {
  LinearProbeConfig c;
  c.n = 16;
  c.kmax = 5;
  c.M = 64;
  c.samples = samples;
  c.seed = 17;
  return c;
}
}  // namespace

TEST_CASE("Duhamel step integrals against quadrature") {
  for (double h : {0.05, -0.05, 0.3, -0.7})
    for (double p : {0.0, 0.5, 1.9, 2.1, -16.0, 64.0}) {
      const cplx q0 = integrate([&](double u) { return std::polar(1.0, -u * p); }, 0.0, h, 4);
      const cplx q1 = integrate([&](double u) { return u * std::polar(1.0, -u * p); }, 0.0, h, 4);
      CHECK(std::abs(duhamel_i0(h, p) - q0) < 1e-14);
      CHECK(std::abs(duhamel_i1(h, p) - q1) < 1e-14);
    }
}

TEST_CASE("Duhamel integral of a single space-time mode") {
  auto g = make_spacetime_grid(make_grid(16), 32, 2 * kPi);
  const long j = 3, mt = 2;
  const double p = 9.0, tau = 2.0, tc = kPi;
  std::vector<cplx> c(g.size());
  c[fft::slot(mt, g.M) * 16 + fft::slot(j, 16)] = 1.0;
  SpaceTimeField f(g, c);
  auto exact = [&](double t) {
    return std::polar(1.0, -t * p) * (std::polar(1.0, (tau + p) * t) - std::polar(1.0, (tau + p) * tc)) /
           cplx(0.0, tau + p);
  };
  auto error = [&](std::size_t r) {
    const auto v = duhamel(f, r);
    double e = 0.0;
    for (std::size_t m = 0; m < g.M; ++m) {
      e = std::max(e, std::abs(v[m].coeff(j) - exact(g.t(m))));
      for (long k = -7; k < 8; ++k)
        if (k != j) CHECK(std::abs(v[m].coeff(k)) < 1e-15);
    }
    return e;
  };
  const double e4 = error(4), e8 = error(8), e16 = error(16);
  CHECK(e16 < 2e-3);
  CHECK(e4 / e8 == doctest::Approx(4.0).epsilon(0.05));
  CHECK(e8 / e16 == doctest::Approx(4.0).epsilon(0.05));
  // Starts at the centre of the span.
  CHECK(std::abs(duhamel(f, 8)[16].coeff(j)) == 0.0);
}

TEST_CASE("resonant single mode: L4 and X^{0,3/8} from window quadrature") {
  const std::size_t M = 256;
  const double T = 2 * kPi;
  auto g = make_spacetime_grid(make_grid(16), M, T);
  std::vector<ComplexField> slices;
  auto f = ComplexField::from_function(g.spatial, [](double x) { return std::polar(1.0, 3 * x); });
  for (std::size_t m = 0; m < M; ++m) slices.push_back(free_propagate(f, g.t(m) - 0.5 * T));
  const auto u = from_slices(g, slices, T);

  auto window = [&](double t) { return time_window(t, T, T); };
  const double l4 = std::pow(2 * kPi * integrate([&](double t) { return cplx(std::pow(window(t), 4)); }, 0.0, T).real(),
                             0.25);
  CHECK(st_lebesgue(u, 4) == doctest::Approx(l4).epsilon(1e-9));

  // c(3, tau) = (1/T) int eta(t) e^{-9i(t - T/2)} e^{-i tau t} dt.
  double sum = 0.0;
  for (long m = -static_cast<long>(M) / 2 + 1; m < static_cast<long>(M) / 2; ++m) {
    const double tau = 2 * kPi * m / T;
    const cplx cm = integrate([&](double t) { return window(t) * std::polar(1.0, -9 * (t - 0.5 * T) - tau * t); },
                              0.0, T) /
                    T;
    sum += std::pow(1.0 + std::abs(tau + 9), 0.75) * std::norm(cm);
  }
  const double x38 = std::sqrt(g.measure() * sum);
  CHECK(x_norm(u, 0.0, 0.375) == doctest::Approx(x38).epsilon(1e-9));
  // The free wave concentrates on sigma = 0, so X^{0,1/2} is a window norm.
  CHECK(x_norm(u, 0.0, 0.5) < 2.0 * x_norm(u, 0.0, 0.0));
}

TEST_CASE("probe reports are finite and deterministic") {
  const auto c = small();
  for (auto fn : {homogeneous_probe, duhamel_y_probe, duhamel_x_probe, time_localization_probe, strichartz_probe,
                  embedding_probe}) {
    const auto a = fn(c), b = fn(c);
    std::ostringstream sa, sb;
    a.write_csv(sa);
    b.write_csv(sb);
    CHECK(sa.str() == sb.str());
    CHECK(a.rows.size() == c.samples);
    CHECK(a.skipped == 0);
    for (const auto& r : a.rows) {
      CHECK(std::isfinite(r.ratio));
      CHECK(r.ratio > 0.0);
    }
    CHECK(a.summary().sup >= a.summary().mean);
  }
}

TEST_CASE("embedding ratio is bounded by T^{-1/2}") {
  auto c = small(9);
  for (double s : {0.0, 0.5}) {
    c.s = s;
    const auto r = embedding_probe(c);
    CHECK(r.summary().sup <= 1.0 / std::sqrt(c.T) + 1e-12);
  }
}

TEST_CASE("homogeneous probe is stable across seeds and regularity") {
  auto c = small(12);
  for (double s : {0.0, 0.25, 1.0}) {
    c.s = s;
    const auto r = homogeneous_probe(c);
    CHECK(r.summary().sup < 5.0 * r.summary().mean);
  }
}
