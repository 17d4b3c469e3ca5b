#include "bogl/gauge.hpp"

#include <cmath>

#include "bogl/errors.hpp"

namespace bogl::gauge {
namespace {

double coeff_scale(const RealField& u) {
  double m = 0.0;
  for (auto v : u.coeffs()) m = std::max(m, std::abs(v));
  return m;
}

void require_mean_zero(const RealField& u, const char* what) {
  const double m = std::abs(u.mean());
  if (m > 1e-13 * std::max(coeff_scale(u), 1e-300) && m > 1e-300)
    throw DomainError(std::string(what) + " needs a mean-zero field");
}

RealField without_mean(const RealField& u) {
  auto c = u.coeffs();
  c[0] = 0.0;
  return RealField(u.grid(), std::move(c));
}

// Fine-grid quantities shared by the gauge maps.
struct Fine {
  RealField u, F;
  ComplexField G, E;  // e^{-iF/2}, e^{iF/2}
};

Fine fine_fields(const RealField& u, const Options& o) {
  Fine f;
  f.u = refine(u, o.oversample);
  f.F = primitive(f.u);
  f.G = map_samples(f.F, [](double x) { return std::polar(1.0, -0.5 * x); });
  f.E = map_samples(f.F, [](double x) { return std::polar(1.0, 0.5 * x); });
  return f;
}

}  // namespace

std::pair<RealField, double> mean_zero_reduce(const RealField& u0) {
  const double m = u0.mean().real();
  return {without_mean(u0), m};
}

RealField translate(const RealField& f, double s) {
  return apply_real({"shift", [s](double xi) { return std::polar(1.0, -xi * s); }, true}, f);
}

Trajectory reduce_trajectory(const Trajectory& tr, double* mean) {
  if (tr.states.empty()) throw UsageError("empty trajectory");
  const double m = tr.states.front().mean().real();
  Trajectory out;
  out.times = tr.times;
  for (std::size_t i = 0; i < tr.states.size(); ++i) {
    auto s = without_mean(translate(tr.states[i], m * tr.times[i]));
    out.diagnostics.push_back(diagnose(s, tr.times[i]));
    out.states.push_back(std::move(s));
  }
  if (mean) *mean = m;
  return out;
}

Trajectory ungauge_trajectory(const Trajectory& reduced, double mean) {
  Trajectory out;
  out.times = reduced.times;
  for (std::size_t i = 0; i < reduced.states.size(); ++i) {
    auto c = translate(reduced.states[i], -mean * reduced.times[i]).coeffs();
    c[0] += mean;
    RealField s(reduced.states[i].grid(), std::move(c));
    out.diagnostics.push_back(diagnose(s, reduced.times[i]));
    out.states.push_back(std::move(s));
  }
  return out;
}

RealField primitive(const RealField& u) {
  require_mean_zero(u, "primitive");
  return apply_real({"dx^-1", [](double xi) { return xi == 0.0 ? cplx(0.0) : cplx(0.0, -1.0 / xi); }, true}, u);
}

ComplexField gauge_W(const RealField& u, const Options& o) {
  const auto f = fine_fields(u, o);
  return truncate(project(f.G, {Proj::plus}), u.grid());
}

ComplexField gauge_w(const RealField& u, const Options& o) { return derivative(gauge_W(u, o)); }

ComplexField gauge_w_product(const RealField& u, const Options& o) {
  const auto f = fine_fields(u, o);
  const auto gu = multiply(f.G, to_complex(f.u));
  return truncate(scale(project(gu, {Proj::plus}), cplx(0.0, -0.5)), u.grid());
}

GaugeState gauge(const RealField& u, double time, const Options& o) {
  auto [ut, m] = mean_zero_reduce(u);
  GaugeState s;
  s.F = primitive(ut);
  s.W = gauge_W(ut, o);
  s.w = derivative(s.W);
  s.u_tilde = std::move(ut);
  s.mean_shift = m;
  s.time = time;
  return s;
}

ComplexField gauge_rhs(const RealField& u, const Options& o, bool with_mean_term) {
  const auto f = fine_fields(u, o);
  const auto W = project(f.G, {Proj::plus});
  const auto um = project(derivative(f.u), {Proj::minus});
  const auto prod = derivative(project(multiply(W, um), {Proj::plus}));
  auto rhs = scale(prod, -1.0);
  if (with_mean_term) {
    const double p0 = momentum(u) / u.grid().length();  // P0(F_x^2) = mean of u^2
    rhs += scale(derivative(W), cplx(0.0, 0.25 * p0));
  }
  return truncate(rhs, u.grid());
}

std::vector<ResidualRow> gauge_residual(const Trajectory& tr, const Options& o, bool with_mean_term) {
  const std::size_t n = tr.states.size();
  if (n < 3) throw UsageError("gauge residual needs at least 3 snapshots");
  std::vector<ComplexField> w;
  w.reserve(n);
  for (const auto& s : tr.states) w.push_back(gauge_w(s, o));
  std::vector<ResidualRow> rows;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h = tr.times[i + 1] - tr.times[i - 1];
    const double h_left = tr.times[i] - tr.times[i - 1];
    if (std::abs(h - 2 * h_left) > 1e-9 * h) throw UsageError("snapshot times are not equally spaced");
    auto wt = scale(w[i + 1] - w[i - 1], 1.0 / h);
    auto lhs = wt - scale(derivative(w[i], 2), cplx(0.0, 1.0));
    const auto rhs = gauge_rhs(tr.states[i], o, with_mean_term);
    const double p0 = momentum(tr.states[i]) / tr.states[i].grid().length();
    rows.push_back({tr.times[i], sobolev_norm(lhs - rhs, 0.0), 0.25 * p0 * sobolev_norm(w[i], 0.0)});
  }
  return rows;
}

Reconstruction reconstruct_high(const RealField& u, const Options& o) {
  const auto f = fine_fields(u, o);
  const auto& g = u.grid();
  const auto cu = to_complex(f.u);
  const auto gu = multiply(f.G, cu);
  const auto w = scale(project(gu, {Proj::plus}), cplx(0.0, -0.5));
  const auto Eplus = project(f.E, {Proj::plus});
  const cplx p0 = gu.mean();

  auto t1 = scale(multiply(f.E, w), cplx(0.0, 2.0));
  auto t2 = scale(Eplus, p0);
  auto t3 = scale(multiply(Eplus, derivative(project(f.G, {Proj::minus}))), cplx(0.0, 2.0));
  const auto rhs = project(t1 + t2 + t3, {Proj::plus_HI});

  Reconstruction r{project(u, {Proj::plus_HI}), truncate(rhs, g), 0.0};
  r.rel_gap = relative_gap(r.lhs, r.rhs);
  if (sobolev_norm(r.lhs, 0.0) == 0.0) r.rel_gap = sobolev_norm(r.rhs, 0.0);
  return r;
}

std::pair<double, double> primitive_gap(const RealField& u1, const RealField& u2, bool same_low) {
  if (!(u1.grid() == u2.grid())) throw UsageError("field grids differ");
  const auto v = u1 - u2;
  if (same_low) {
    const double lo = sobolev_norm(project_real(v, {Proj::LO}), 0.0);
    if (lo > 1e-12 * std::max(sobolev_norm(u1, 0.0), 1e-300)) throw DomainError("P_LO parts differ");
  }
  const auto dF = primitive(u1) - primitive(u2);
  return {lebesgue_norm(dF, kLinf), sobolev_norm(v, 0.0)};
}

double exp_multiplication_ratio(const RealField& u, const ComplexField& g, double alpha, int q, const Options& o) {
  if (q != 2 && q != 4) throw DomainError("q must be 2 or 4");
  if (!(alpha >= 0.0 && alpha <= 1.0 / q)) throw DomainError("alpha must lie in [0, 1/q]");
  if (!(u.grid() == g.grid())) throw UsageError("field grids differ");
  const auto f = fine_fields(u, o);
  const auto prod = multiply(f.G, refine(g, o.oversample));
  const double num = lebesgue_norm(fractional(prod, Potential::bessel, alpha), q);
  const double den = (1.0 + sobolev_norm(u, 0.0)) * lebesgue_norm(fractional(refine(g, o.oversample), Potential::bessel, alpha), q);
  return den == 0.0 ? 0.0 : num / den;
}

}  // namespace bogl::gauge
