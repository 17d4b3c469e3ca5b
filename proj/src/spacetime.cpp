#include "bogl/spacetime.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "bogl/errors.hpp"
#include "bogl/fft.hpp"
#include "bogl/kernels.hpp"
#include "bogl/littlewood_paley.hpp"

namespace bogl {

double SpaceTimeGrid::tau(std::size_t m) const {
  return 2.0 * std::numbers::pi * static_cast<double>(time_index(m)) / T;
}

long SpaceTimeGrid::time_index(std::size_t m) const { return fft::signed_index(m, M); }

SpaceTimeGrid make_spacetime_grid(const SpatialGrid& g, std::size_t M, double T) {
  if (M < 16 || !std::has_single_bit(M)) throw DomainError("time sample count must be a power of two >= 16");
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("time span must be positive");
  return {g, M, T};
}

double time_window(double t, double span, double width) { return lp::eta(4.0 * (t - 0.5 * span) / width); }

// ---------------------------------------------------------------- field

SpaceTimeField::SpaceTimeField(SpaceTimeGrid g, std::vector<cplx> coeffs) : grid_(std::move(g)), c_(std::move(coeffs)) {
  if (c_.size() != grid_.size()) throw UsageError("coefficient count does not match space-time grid");
  // Nyquist row and column carry no conjugate partner.
  const std::size_t N = grid_.spatial.size(), M = grid_.M;
  for (std::size_t k = 0; k < N; ++k) c_[(M / 2) * N + k] = 0.0;
  for (std::size_t m = 0; m < M; ++m) c_[m * N + N / 2] = 0.0;
}

SpaceTimeField SpaceTimeField::from_samples(const SpaceTimeGrid& g, std::span<const cplx> samples) {
  if (samples.size() != g.size()) throw UsageError("sample count does not match space-time grid");
  std::vector<cplx> c(g.size());
  fft::forward2d(samples, c, g.M, g.spatial.size());
  return SpaceTimeField(g, std::move(c));
}

cplx SpaceTimeField::coeff(long j, long m) const {
  const long N = static_cast<long>(grid_.spatial.size()), M = static_cast<long>(grid_.M);
  if (j < -N / 2 || j >= N / 2 || m < -M / 2 || m >= M / 2) return 0.0;
  return c_[fft::slot(m, grid_.M) * grid_.spatial.size() + fft::slot(j, grid_.spatial.size())];
}

std::vector<cplx> SpaceTimeField::samples() const {
  std::vector<cplx> s(c_.size());
  fft::inverse2d(c_, s, grid_.M, grid_.spatial.size());
  return s;
}

ComplexField SpaceTimeField::slice(std::size_t m) const {
  const auto s = samples();
  const std::size_t N = grid_.spatial.size();
  return ComplexField::from_samples(grid_.spatial, std::span<const cplx>(s.data() + m * N, N));
}

SpaceTimeField& SpaceTimeField::operator+=(const SpaceTimeField& o) {
  if (!(grid_ == o.grid_)) throw UsageError("space-time grids differ");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

SpaceTimeField& SpaceTimeField::operator-=(const SpaceTimeField& o) {
  if (!(grid_ == o.grid_)) throw UsageError("space-time grids differ");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

SpaceTimeField& SpaceTimeField::operator*=(cplx a) {
  for (auto& v : c_) v *= a;
  return *this;
}

SpaceTimeField from_slices(const SpaceTimeGrid& g, const std::vector<ComplexField>& slices, double width) {
  if (slices.size() != g.M) throw UsageError("need one slice per time sample");
  const std::size_t N = g.spatial.size();
  std::vector<cplx> s(g.size());
  for (std::size_t m = 0; m < g.M; ++m) {
    if (!(slices[m].grid() == g.spatial)) throw UsageError("slice grid does not match");
    const double w = width > 0.0 ? time_window(g.t(m), g.T, width) : 1.0;
    const auto sm = slices[m].samples();
    for (std::size_t k = 0; k < N; ++k) s[m * N + k] = w * sm[k];
  }
  return SpaceTimeField::from_samples(g, s);
}

SpaceTimeField lift(const Trajectory& tr, const SpaceTimeGrid& g, double width) {
  if (tr.states.size() < g.M) throw UsageError("trajectory has fewer snapshots than time samples");
  std::vector<ComplexField> slices;
  for (std::size_t m = 0; m < g.M; ++m) {
    if (std::abs(tr.times[m] - g.t(m)) > 1e-9 * std::max(1.0, g.T))
      throw UsageError("trajectory times do not align with the space-time grid");
    slices.push_back(to_complex(tr.states[m]));
  }
  return from_slices(g, slices, width < 0.0 ? g.T : width);
}

// ---------------------------------------------------------------- norms

namespace {

double japanese(double x) { return 1.0 + std::abs(x); }

// Row m of the coefficient matrix holds tau_m; column k holds xi_k.
template <class Fn>
void for_each_coeff(const SpaceTimeField& f, Fn&& fn) {
  const auto& g = f.grid();
  const std::size_t N = g.spatial.size();
  for (std::size_t m = 0; m < g.M; ++m) {
    const double tau = g.tau(m);
    for (std::size_t k = 0; k < N; ++k) fn(g.spatial.xi(k), tau, f.coeffs()[m * N + k]);
  }
}

}  // namespace

double x_norm(const SpaceTimeField& f, double s, double b) {
  const auto& g = f.grid();
  std::vector<double> w(g.size());
  std::size_t i = 0;
  for_each_coeff(f, [&](double xi, double tau, cplx) {
    const double sigma = tau + std::abs(xi) * xi;
    w[i++] = std::pow(japanese(sigma), 2 * b) * std::pow(japanese(xi), 2 * s);
  });
  return std::sqrt(g.measure() * kernels::weighted_sum_sq(f.coeffs(), w));
}

double z_norm(const SpaceTimeField& f, double s, double b) {
  const auto& g = f.grid();
  const std::size_t N = g.spatial.size();
  std::vector<double> col(N, 0.0);
  for (std::size_t m = 0; m < g.M; ++m) {
    const double tau = g.tau(m);
    for (std::size_t k = 0; k < N; ++k) {
      const double xi = g.spatial.xi(k);
      col[k] += std::pow(japanese(tau + std::abs(xi) * xi), b) * std::pow(japanese(xi), s) *
                std::abs(f.coeffs()[m * N + k]);
    }
  }
  double sum = 0.0;
  for (double c : col) sum += c * c;
  return std::sqrt(g.measure() * sum);
}

double z_tilde_norm(const SpaceTimeField& f, double s, double b) {
  const double lo = z_norm(project(f, {Proj::lo}), s, b);
  double sq = 0.0;
  for (double N : lp::shells(f.grid().spatial)) sq += std::pow(z_norm(project(f, {Proj::dyadic, N}), s, b), 2);
  return lo + std::sqrt(sq);
}

double y_norm(const SpaceTimeField& f, double s) { return x_norm(f, s, 0.5) + z_tilde_norm(f, s, 0.0); }

double st_lebesgue(const SpaceTimeField& f, int p) {
  if (p == 2) return x_norm(f, 0.0, 0.0);
  if (p != 4) throw DomainError("space-time Lebesgue norm supports p = 2, 4");
  // ||u||_4^4 = ||u^2||_2^2 and u^2 is exact on the doubled grid.
  const auto fine = refine(f, 2, 2);
  auto s = fine.samples();
  for (auto& v : s) v = v * v;
  return std::sqrt(x_norm(SpaceTimeField::from_samples(fine.grid(), s), 0.0, 0.0));
}

double sup_sobolev(const SpaceTimeField& f, double s) {
  const auto& g = f.grid();
  const auto smp = f.samples();
  const std::size_t N = g.spatial.size();
  double best = 0.0;
  for (std::size_t m = 0; m < g.M; ++m) {
    const auto sl = ComplexField::from_samples(g.spatial, std::span<const cplx>(smp.data() + m * N, N));
    best = std::max(best, sobolev_norm(sl, s));
  }
  return best;
}

// ---------------------------------------------------------------- operators

SpaceTimeField weight(const SpaceTimeField& f, const std::function<cplx(double, double)>& w) {
  const auto& g = f.grid();
  const std::size_t N = g.spatial.size();
  std::vector<cplx> c = f.coeffs();
  for (std::size_t m = 0; m < g.M; ++m) {
    const double tau = g.tau(m);
    for (std::size_t k = 0; k < N; ++k) c[m * N + k] *= w(g.spatial.xi(k), tau);
  }
  return SpaceTimeField(g, std::move(c));
}

SpaceTimeField apply(const Multiplier& mult, const SpaceTimeField& f) {
  const auto& g = f.grid();
  const std::size_t N = g.spatial.size();
  std::vector<cplx> table(N);
  for (std::size_t k = 0; k < N; ++k) table[k] = mult.symbol(g.spatial.xi(k));
  std::vector<cplx> c = f.coeffs();
  for (std::size_t m = 0; m < g.M; ++m)
    kernels::scale(std::span<cplx>(c.data() + m * N, N), std::span<const cplx>(table));
  return SpaceTimeField(g, std::move(c));
}

SpaceTimeField project(const SpaceTimeField& f, Projection p) { return apply(projection_symbol(p), f); }

SpaceTimeField refine(const SpaceTimeField& f, std::size_t fx, std::size_t ft) {
  const auto& g = f.grid();
  const auto fine = make_spacetime_grid(make_grid(g.spatial.size() * fx, g.spatial.lambda()), g.M * ft, g.T);
  const std::size_t N = g.spatial.size(), M = g.M, NF = fine.spatial.size();
  std::vector<cplx> c(fine.size());
  const long hn = static_cast<long>(N / 2), hm = static_cast<long>(M / 2);
  for (long m = -hm + 1; m < hm; ++m)
    for (long j = -hn + 1; j < hn; ++j) c[fft::slot(m, fine.M) * NF + fft::slot(j, NF)] = f.coeff(j, m);
  return SpaceTimeField(fine, std::move(c));
}

SpaceTimeField truncate(const SpaceTimeField& f, const SpaceTimeGrid& coarse) {
  const auto& g = f.grid();
  if (coarse.T != g.T || coarse.spatial.lambda() != g.spatial.lambda() || coarse.M > g.M ||
      coarse.spatial.size() > g.spatial.size())
    throw UsageError("truncate needs a coarser space-time grid with the same periods");
  const std::size_t NC = coarse.spatial.size();
  std::vector<cplx> c(coarse.size());
  const long hn = static_cast<long>(NC / 2), hm = static_cast<long>(coarse.M / 2);
  for (long m = -hm + 1; m < hm; ++m)
    for (long j = -hn + 1; j < hn; ++j) c[fft::slot(m, coarse.M) * NC + fft::slot(j, NC)] = f.coeff(j, m);
  return SpaceTimeField(coarse, std::move(c));
}

SpaceTimeField multiply(const SpaceTimeField& a, const SpaceTimeField& b) {
  if (!(a.grid() == b.grid())) throw UsageError("space-time grids differ");
  auto sa = a.samples();
  const auto sb = b.samples();
  kernels::multiply(sa, sa, sb);
  return SpaceTimeField::from_samples(a.grid(), sa);
}

SpaceTimeField random_spacetime(const SpaceTimeGrid& g, rng::Stream& s, const SpaceTimeSpectrum& sp) {
  const std::size_t N = g.spatial.size(), M = g.M;
  const long kmax = sp.kmax < 0 ? static_cast<long>(N / 2) - 1 : sp.kmax;
  const long mmax = sp.mmax < 0 ? static_cast<long>(M / 2) - 1 : sp.mmax;
  std::vector<cplx> c(g.size());
  for (std::size_t m = 0; m < M; ++m) {
    const long mi = g.time_index(m);
    const double tau = g.tau(m);
    for (std::size_t k = 0; k < N; ++k) {
      const long j = g.spatial.index(k);
      const double xi = g.spatial.xi(k);
      const double re = s.normal();
      const cplx z = cplx(re, s.normal()) * M_SQRT1_2;
      if (std::abs(j) > kmax || std::abs(mi) > mmax) continue;
      if (sp.positive_only && xi < 1.0) continue;
      const double sigma = tau + std::abs(xi) * xi;
      c[m * N + k] = z * std::pow(1.0 + std::abs(xi), -sp.decay_xi) * std::pow(1.0 + std::abs(sigma), -sp.decay_sigma);
    }
  }
  if (sp.real && !sp.positive_only) {
    std::vector<cplx> h(c.size());
    for (std::size_t m = 0; m < M; ++m)
      for (std::size_t k = 0; k < N; ++k) {
        const std::size_t rm = m == 0 ? 0 : M - m, rk = k == 0 ? 0 : N - k;
        h[m * N + k] = 0.5 * (c[m * N + k] + std::conj(c[rm * N + rk]));
      }
    c = std::move(h);
  }
  return SpaceTimeField(g, std::move(c));
}

}  // namespace bogl
