#include "bogl/littlewood_paley.hpp"

#include <cmath>

#include "bogl/errors.hpp"

namespace bogl::lp {
namespace {

double g(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = g(t), b = g(1.0 - t);
  return a / (a + b);
}

}  // namespace

double eta(double xi) { return smooth_step(2.0 - std::abs(xi)); }

double phi(double xi) { return eta(xi) - eta(2.0 * xi); }

double phi_N(double xi, double N) { return phi(xi / N); }

std::vector<double> shells(const SpatialGrid& g) {
  double max_xi = 0.0;
  for (double xi : g.xis()) max_xi = std::max(max_xi, std::abs(xi));
  std::vector<double> out;
  for (double N = 1.0;; N *= 2.0) {
    out.push_back(N);
    if (N >= max_xi) break;
  }
  return out;
}

template <FieldKind K>
Field<K> LPDecomposition<K>::sum() const {
  Field<K> s = low;
  for (const auto& [N, f] : shells) s += f;
  return s;
}

template <FieldKind K>
LPDecomposition<K> decompose(const Field<K>& f) {
  const Multiplier low{"eta(2xi)", [](double xi) { return cplx(eta(2.0 * xi)); }, true};
  LPDecomposition<K> d;
  if constexpr (K == FieldKind::real) {
    d.low = apply_real(low, f);
    for (double N : shells(f.grid())) d.shells.emplace_back(N, project_real(f, {Proj::dyadic, N}));
  } else {
    d.low = apply(low, f);
    for (double N : shells(f.grid())) d.shells.emplace_back(N, project(f, {Proj::dyadic, N}));
  }
  return d;
}

template <FieldKind K>
double tilde_lp_norm(const Field<K>& f, int p) {
  if (p != 2 && p != 4) throw DomainError("tilde L^p norm is defined here for p = 2, 4");
  double lo = 0.0, sq = 0.0;
  if constexpr (K == FieldKind::real) {
    lo = lebesgue_norm(project_real(f, {Proj::lo}), p);
    for (double N : shells(f.grid())) sq += std::pow(lebesgue_norm(project_real(f, {Proj::dyadic, N}), p), 2);
  } else {
    lo = lebesgue_norm(project(f, {Proj::lo}), p);
    for (double N : shells(f.grid())) sq += std::pow(lebesgue_norm(project(f, {Proj::dyadic, N}), p), 2);
  }
  return lo + std::sqrt(sq);
}

template struct LPDecomposition<FieldKind::real>;
template struct LPDecomposition<FieldKind::complex>;
template LPDecomposition<FieldKind::real> decompose(const RealField&);
template LPDecomposition<FieldKind::complex> decompose(const ComplexField&);
template double tilde_lp_norm(const RealField&, int);
template double tilde_lp_norm(const ComplexField&, int);

}  // namespace bogl::lp
