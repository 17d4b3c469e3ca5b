#include "bogl/calculus.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <optional>

#include "bogl/errors.hpp"

namespace bogl::calculus {
namespace {

void check(double a_minus, double a_plus) {
  if (!(a_minus > 0.0) || !(a_minus <= a_plus) || !(a_minus + a_plus > 0.5) || !std::isfinite(a_plus))
    throw DomainError("calculus lemma needs 0 < a- <= a+ and a- + a+ > 1/2");
}

}  // namespace

double exponent(double a_minus, double a_plus, double eps) {
  check(a_minus, a_plus);
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  if (a_plus > 0.5) return 2.0 * a_minus;
  if (a_plus == 0.5) return 2.0 * a_minus - eps;
  return 2.0 * (a_plus + a_minus) - 1.0;
}

double integral(double a_minus, double a_plus, double mu, double tol) {
  check(a_minus, a_plus);
  if (!std::isfinite(mu)) throw DomainError("mu must be finite");
  auto f = [&](double y) { return std::pow(1.0 + std::abs(y), -2.0 * a_minus) * std::pow(1.0 + std::abs(y - mu), -2.0 * a_plus); };
  const double lo = std::min(0.0, mu), hi = std::max(0.0, mu);
  boost::math::quadrature::exp_sinh<double> tail;
  double sum = tail.integrate([&](double t) { return f(lo - t); }, tol) +
               tail.integrate([&](double t) { return f(hi + t); }, tol);
  if (hi > lo) {
    // Panels of unit width near the two kinks, geometric growth inside.
    std::vector<double> cuts{lo};
    for (double w = 1.0; lo + w < 0.5 * (lo + hi); w *= 2.0) cuts.push_back(lo + w);
    const std::size_t left = cuts.size();
    for (std::size_t i = left; i-- > 1;) cuts.push_back(hi - (cuts[i] - lo));
    cuts.push_back(hi);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      if (cuts[i + 1] > cuts[i])
        sum += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, cuts[i], cuts[i + 1], 15, tol);
  }
  return sum;
}

std::vector<double> sweep_values(const MuSweep& sweep) {
  if (!(sweep.max_abs > 1e-2) || sweep.points < 2) throw DomainError("mu sweep needs max_abs > 1e-2 and >= 2 points");
  std::vector<double> out{0.0};
  const double a = std::log(1e-2), b = std::log(sweep.max_abs);
  for (std::size_t i = 0; i < sweep.points; ++i) {
    const double m = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(sweep.points - 1));
    out.push_back(m);
    out.push_back(-m);
  }
  return out;
}

ProbeReport calculus_lemma_check(double a_minus, double a_plus, const MuSweep& sweep, double tol, double eps) {
  const double s = exponent(a_minus, a_plus, eps);
  const auto mus = sweep_values(sweep);
  std::vector<std::optional<ProbeRow>> rows;
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const double lhs = integral(a_minus, a_plus, mus[i], tol);
    const double rhs = std::pow(1.0 + std::abs(mus[i]), -s);
    rows.push_back(ProbeRow{i, lhs, rhs, lhs / rhs, {}, {}, {}});
  }
  return assemble_report("calculus_lemma", "calculus lemma for <y>^{-2a-} <y - mu>^{-2a+}", rows,
                         {{"a_minus", format_double(a_minus)},
                          {"a_plus", format_double(a_plus)},
                          {"s", format_double(s)},
                          {"eps", format_double(eps)},
                          {"mu_max", format_double(sweep.max_abs)},
                          {"points", std::to_string(sweep.points)},
                          {"tol", format_double(tol)}});
}

}  // namespace bogl::calculus
