#include "bogl/dynamics.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "bogl/errors.hpp"
#include "bogl/kernels.hpp"

namespace bogl {

std::vector<double> dealias_mask(const SpatialGrid& g, double dealias) {
  if (!(dealias > 0.0 && dealias <= 1.0)) throw DomainError("dealias fraction must lie in (0, 1]");
  const long keep = static_cast<long>(std::floor(dealias * static_cast<double>(g.size() / 2)));
  std::vector<double> m(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) m[k] = std::abs(g.index(k)) <= keep ? 1.0 : 0.0;
  return m;
}

namespace {

// (1/2) d/dx P(P(u)^2) on coefficient vectors.
void nonlinear_term(const SpatialGrid& g, const std::vector<double>& mask, const std::vector<cplx>& half_dx,
                    const std::vector<cplx>& v, std::vector<cplx>& out) {
  std::vector<cplx> w(v);
  kernels::scale(std::span<cplx>(w), std::span<const double>(mask));
  const RealField u(g, std::move(w));
  auto s = u.samples();
  for (auto& x : s) x = {x.real() * x.real(), 0.0};
  const auto sq = RealField::from_samples(g, std::span<const cplx>(s));
  out = sq.coeffs();
  kernels::scale(std::span<cplx>(out), std::span<const double>(mask));
  kernels::scale(std::span<cplx>(out), std::span<const cplx>(half_dx));
}

std::vector<cplx> half_derivative(const SpatialGrid& g) {
  std::vector<cplx> d(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) d[k] = cplx(0.0, 0.5 * g.xi(k));
  return d;
}

double linear_symbol_im(double xi) { return -std::abs(xi) * xi; }

}  // namespace

RealField nonlinearity(const RealField& u, double dealias) {
  const auto& g = u.grid();
  std::vector<cplx> out;
  nonlinear_term(g, dealias_mask(g, dealias), half_derivative(g), u.coeffs(), out);
  return RealField(g, std::move(out));
}

double momentum(const RealField& u) {
  const double n = sobolev_norm(u, 0.0);
  return n * n;
}

double energy(const RealField& u) {
  const auto& g = u.grid();
  double quad = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) quad += std::abs(g.xi(k)) * std::norm(u.coeffs()[k]);
  quad *= g.length();
  // The cubic needs 3N/2 points to be alias-free; 2N is the next power of two.
  const auto fine = refine(u, 2);
  double cubic = 0.0;
  for (double x : fine.real_samples()) cubic += x * x * x;
  cubic *= fine.grid().dx();
  return 0.5 * quad - cubic / 6.0;
}

Diagnostics diagnose(const RealField& u, double t) {
  return {t, momentum(u), energy(u), lebesgue_norm(u, kLinf)};
}

// ---------------------------------------------------------------- ETDRK4

EtdStepper::EtdStepper(const SpatialGrid& g, double dt, double dealias, bool linear_only, int contour_points)
    : grid_(g), dt_(dt), linear_only_(linear_only), mask_(dealias_mask(g, dealias)), half_dx_(half_derivative(g)) {
  if (!std::isfinite(dt) || dt == 0.0 || (dt < 0.0 && !linear_only))
    throw DomainError("time step must be positive (negative only for the linear flow)");
  const std::size_t n = g.size();
  e_.resize(n), e2_.resize(n), q_.resize(n), f1_.resize(n), f2_.resize(n), f3_.resize(n);
  const int M = contour_points;
  std::vector<cplx> roots(M);
  for (int m = 0; m < M; ++m) roots[m] = std::polar(1.0, 2.0 * std::numbers::pi * (m + 0.5) / M);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx z0(0.0, dt * linear_symbol_im(g.xi(k)));
    e_[k] = std::exp(z0);
    e2_[k] = std::exp(0.5 * z0);
    cplx q = 0.0, a = 0.0, b = 0.0, c = 0.0;
    for (const cplx r : roots) {
      const cplx z = z0 + r;
      const cplx ez = std::exp(z), ez2 = std::exp(0.5 * z), z3 = z * z * z;
      q += (ez2 - 1.0) / z;
      a += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
      b += (2.0 + z + ez * (z - 2.0)) / z3;
      c += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
    }
    const double s = dt / M;
    q_[k] = s * q;
    f1_[k] = s * a;
    f2_[k] = s * b;
    f3_[k] = s * c;
  }
}

void EtdStepper::rhs(const std::vector<cplx>& v, std::vector<cplx>& out) const {
  nonlinear_term(grid_, mask_, half_dx_, v, out);
}

RealField EtdStepper::step(const RealField& u, double t) const {
  if (!(u.grid() == grid_)) throw UsageError("field grid does not match stepper");
  const std::size_t n = grid_.size();
  const auto& v = u.coeffs();
  std::vector<cplx> out(n);
  if (linear_only_) {
    kernels::multiply(out, e_, v);
    return RealField(grid_, std::move(out));
  }
  std::vector<cplx> nv, na, nb, nc, a(n), b(n), c(n), tmp(n);
  rhs(v, nv);
  kernels::mul_add2(a, e2_, v, q_, nv);
  rhs(a, na);
  kernels::mul_add2(b, e2_, v, q_, na);
  rhs(b, nb);
  for (std::size_t k = 0; k < n; ++k) tmp[k] = 2.0 * nb[k] - nv[k];
  kernels::mul_add2(c, e2_, a, q_, tmp);
  rhs(c, nc);
  for (std::size_t k = 0; k < n; ++k) tmp[k] = 2.0 * (na[k] + nb[k]);
  kernels::mul_add2(out, e_, v, f1_, nv);
  kernels::accumulate(out, f2_, tmp);
  kernels::accumulate(out, f3_, nc);
  const double peak = kernels::max_abs(out);
  if (!std::isfinite(peak) || peak > 1e150)
    throw IntegrationFailure("non-finite state at t = " + std::to_string(t + dt_), t + dt_);
  return RealField(grid_, std::move(out));
}

RealField step(const RealField& u, double dt, double dealias) {
  if (!(dt > 0.0)) throw DomainError("step needs dt > 0");
  return EtdStepper(u.grid(), dt, dealias).step(u);
}

Trajectory simulate(const RealField& u0, const SimConfig& cfg) {
  if (!(u0.grid() == cfg.grid)) throw UsageError("initial data is not on the configured grid");
  if (!(cfg.dt > 0.0) || !(cfg.t_end > 0.0)) throw DomainError("dt and t_end must be positive");
  const double ratio = cfg.t_end / cfg.dt;
  const auto steps = static_cast<std::size_t>(std::llround(ratio));
  if (std::abs(static_cast<double>(steps) * cfg.dt - cfg.t_end) > 1e-12 * std::max(1.0, cfg.t_end))
    throw DomainError("t_end is not an integer multiple of dt");
  const std::size_t stride = std::max<std::size_t>(cfg.snapshot_stride, 1);
  const EtdStepper stepper(cfg.grid, cfg.dt, cfg.dealias);

  Trajectory tr;
  auto record = [&](const RealField& u, double t) {
    tr.times.push_back(t);
    tr.states.push_back(u);
    tr.diagnostics.push_back(diagnose(u, t));
  };
  RealField u = u0;
  record(u, 0.0);
  for (std::size_t i = 1; i <= steps; ++i) {
    const double t_prev = static_cast<double>(i - 1) * cfg.dt;
    u = stepper.step(u, t_prev);
    if (i % stride == 0 || i == steps) record(u, static_cast<double>(i) * cfg.dt);
  }
  return tr;
}

RealField rescale(const RealField& u0, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("scale factor must be positive");
  const double k = std::log2(lambda);
  if (k != std::round(k)) throw DomainError("scale factor must be dyadic (2^k)");
  const auto& g = u0.grid();
  const double period = g.lambda() / lambda;
  if (period < 1.0) throw DomainError("rescaled period scale would drop below 1");
  // Sample j of the new grid sits at x_j / lambda, so the samples are lambda u0(x_j).
  auto c = u0.coeffs();
  for (auto& v : c) v *= lambda;
  return RealField(make_grid(g.size(), period), std::move(c));
}

}  // namespace bogl
