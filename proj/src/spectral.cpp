#include "bogl/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "bogl/errors.hpp"
#include "bogl/fft.hpp"
#include "bogl/kernels.hpp"
#include "bogl/littlewood_paley.hpp"

namespace bogl {

double SpatialGrid::length() const { return 2.0 * std::numbers::pi * lambda_; }

long SpatialGrid::index(std::size_t k) const { return fft::signed_index(k, n_); }

SpatialGrid make_grid(std::size_t n, double lambda) {
  if (n < 8 || !std::has_single_bit(n))
    throw DomainError("grid size must be a power of two >= 8, got " + std::to_string(n));
  if (!(lambda >= 1.0) || !std::isfinite(lambda))
    throw DomainError("period scale must be >= 1, got " + std::to_string(lambda));
  SpatialGrid g;
  g.n_ = n;
  g.lambda_ = lambda;
  auto xi = std::make_shared<std::vector<double>>(n);
  for (std::size_t k = 0; k < n; ++k) (*xi)[k] = static_cast<double>(fft::signed_index(k, n)) / lambda;
  g.xi_ = std::move(xi);
  return g;
}

// ---------------------------------------------------------------- fields

template <FieldKind K>
Field<K>::Field(SpatialGrid g, std::vector<cplx> coeffs) : grid_(std::move(g)), c_(std::move(coeffs)) {
  if (c_.size() != grid_.size()) throw UsageError("coefficient count does not match grid");
  normalize();
}

template <FieldKind K>
void Field<K>::normalize() {
  const std::size_t n = c_.size();
  if (n == 0) return;
  c_[n / 2] = 0.0;
  if constexpr (K == FieldKind::real) {
    c_[0] = c_[0].real();
    for (std::size_t k = 1; k < n / 2; ++k) {
      const cplx a = 0.5 * (c_[k] + std::conj(c_[n - k]));
      c_[k] = a;
      c_[n - k] = std::conj(a);
    }
  }
}

template <FieldKind K>
Field<K> Field<K>::from_samples(const SpatialGrid& g, std::span<const double> samples) {
  std::vector<cplx> s(samples.begin(), samples.end());
  return from_samples(g, std::span<const cplx>(s));
}

template <FieldKind K>
Field<K> Field<K>::from_samples(const SpatialGrid& g, std::span<const cplx> samples) {
  if (samples.size() != g.size()) throw UsageError("sample count does not match grid");
  std::vector<cplx> c(g.size());
  fft::forward(samples, c);
  return Field(g, std::move(c));
}

template <FieldKind K>
cplx Field<K>::coeff(long j) const {
  const long n = static_cast<long>(c_.size());
  if (j < -n / 2 || j >= n / 2) return 0.0;
  return c_[fft::slot(j, c_.size())];
}

template <FieldKind K>
std::vector<cplx> Field<K>::samples() const {
  std::vector<cplx> s(c_.size());
  fft::inverse(c_, s);
  return s;
}

template <FieldKind K>
std::vector<double> Field<K>::real_samples() const {
  const auto s = samples();
  std::vector<double> r(s.size());
  std::transform(s.begin(), s.end(), r.begin(), [](cplx v) { return v.real(); });
  return r;
}

template <FieldKind K>
Field<K>& Field<K>::operator+=(const Field& o) {
  if (!(grid_ == o.grid_)) throw UsageError("field grids differ");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

template <FieldKind K>
Field<K>& Field<K>::operator-=(const Field& o) {
  if (!(grid_ == o.grid_)) throw UsageError("field grids differ");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

template <FieldKind K>
Field<K>& Field<K>::operator*=(double a) {
  for (auto& v : c_) v *= a;
  return *this;
}

template class Field<FieldKind::real>;
template class Field<FieldKind::complex>;

ComplexField to_complex(const RealField& f) { return ComplexField(f.grid(), f.coeffs()); }

RealField to_real(const ComplexField& f, double tol) {
  const auto& c = f.coeffs();
  const std::size_t n = c.size();
  double asym = 0.0, total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t m = k == 0 ? 0 : n - k;
    asym = std::max(asym, std::abs(c[k] - std::conj(c[m])));
    total = std::max(total, std::abs(c[k]));
  }
  if (asym > tol * std::max(total, 1e-300) && asym > 1e-300)
    throw DomainError("field is not real within tolerance");
  return RealField(f.grid(), c);
}

ComplexField scale(const ComplexField& f, cplx a) {
  auto c = f.coeffs();
  for (auto& v : c) v *= a;
  return ComplexField(f.grid(), std::move(c));
}

ComplexField conj(const ComplexField& f) {
  const auto& c = f.coeffs();
  const std::size_t n = c.size();
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = std::conj(c[k == 0 ? 0 : n - k]);
  return ComplexField(f.grid(), std::move(out));
}

// ---------------------------------------------------------------- multipliers

Multiplier compose(const Multiplier& a, const Multiplier& b) {
  auto sa = a.symbol, sb = b.symbol;
  return {a.name + "*" + b.name, [sa, sb](double xi) { return sa(xi) * sb(xi); }, a.hermitian && b.hermitian};
}

namespace {

std::vector<cplx> symbol_table(const Multiplier& m, const SpatialGrid& g) {
  std::vector<cplx> t(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) t[k] = m.symbol(g.xi(k));
  return t;
}

std::vector<cplx> applied(const Multiplier& m, const SpatialGrid& g, std::vector<cplx> c) {
  const auto t = symbol_table(m, g);
  kernels::scale(std::span<cplx>(c), std::span<const cplx>(t));
  return c;
}

}  // namespace

ComplexField apply(const Multiplier& m, const ComplexField& f) {
  return ComplexField(f.grid(), applied(m, f.grid(), f.coeffs()));
}

ComplexField apply(const Multiplier& m, const RealField& f) {
  return ComplexField(f.grid(), applied(m, f.grid(), f.coeffs()));
}

RealField apply_real(const Multiplier& m, const RealField& f) {
  if (!m.hermitian) throw DomainError("multiplier " + m.name + " does not preserve real fields");
  return RealField(f.grid(), applied(m, f.grid(), f.coeffs()));
}

namespace symbols {

Multiplier hilbert() {
  return {"H", [](double xi) { return cplx(0.0, xi > 0 ? -1.0 : xi < 0 ? 1.0 : 0.0); }, true};
}

Multiplier derivative(int order) {
  return {"d" + std::to_string(order),
          [order](double xi) {
            cplx r = 1.0;
            for (int i = 0; i < order; ++i) r *= cplx(0.0, xi);
            return r;
          },
          true};
}

Multiplier riesz(double s) {
  return {"D^" + std::to_string(s),
          [s](double xi) { return xi == 0.0 ? cplx(s == 0.0 ? 1.0 : 0.0) : cplx(std::pow(std::abs(xi), s)); },
          true};
}

Multiplier bessel(double s) {
  return {"J^" + std::to_string(s), [s](double xi) { return cplx(std::pow(1.0 + xi * xi, 0.5 * s)); }, true};
}

Multiplier japanese(double s) {
  return {"<xi>^" + std::to_string(s), [s](double xi) { return cplx(std::pow(1.0 + std::abs(xi), s)); }, true};
}

Multiplier free_group(double t) {
  return {"U(" + std::to_string(t) + ")", [t](double xi) { return std::polar(1.0, -t * std::abs(xi) * xi); },
          true};
}

Multiplier mean() {
  return {"P0", [](double xi) { return cplx(xi == 0.0 ? 1.0 : 0.0); }, true};
}

}  // namespace symbols

Multiplier projection_symbol(Projection p) {
  using lp::eta;
  switch (p.which) {
    case Proj::plus: return {"P+", [](double xi) { return cplx(xi > 0 ? 1.0 : 0.0); }, false};
    case Proj::minus: return {"P-", [](double xi) { return cplx(xi < 0 ? 1.0 : 0.0); }, false};
    case Proj::hi: return {"Phi", [](double xi) { return cplx(1.0 - eta(xi)); }, true};
    case Proj::lo: return {"Plo", [](double xi) { return cplx(eta(xi)); }, true};
    case Proj::HI: return {"PHI", [](double xi) { return cplx(1.0 - eta(xi / 4.0)); }, true};
    case Proj::LO: return {"PLO", [](double xi) { return cplx(eta(xi / 4.0)); }, true};
    case Proj::plus_hi:
      return {"P+hi", [](double xi) { return cplx(xi > 0 ? 1.0 - eta(xi) : 0.0); }, false};
    case Proj::plus_HI:
      return {"P+HI", [](double xi) { return cplx(xi > 0 ? 1.0 - eta(xi / 4.0) : 0.0); }, false};
    case Proj::minus_hi:
      return {"P-hi", [](double xi) { return cplx(xi < 0 ? 1.0 - eta(xi) : 0.0); }, false};
    case Proj::dyadic: {
      const double N = p.N;
      if (!(N >= 1.0) || !std::has_single_bit(static_cast<unsigned long>(N)) ||
          static_cast<double>(static_cast<unsigned long>(N)) != N)
        throw DomainError("dyadic projection needs N = 2^k >= 1");
      return {"P" + std::to_string(static_cast<long>(N)), [N](double xi) { return cplx(lp::phi_N(xi, N)); }, true};
    }
    case Proj::mean: return symbols::mean();
  }
  throw UsageError("unknown projection");
}

ComplexField project(const ComplexField& f, Projection p) { return apply(projection_symbol(p), f); }
ComplexField project(const RealField& f, Projection p) { return apply(projection_symbol(p), f); }
RealField project_real(const RealField& f, Projection p) { return apply_real(projection_symbol(p), f); }

RealField hilbert(const RealField& f) { return apply_real(symbols::hilbert(), f); }

namespace {
template <FieldKind K>
void check_riesz(const Field<K>& f, Potential kind, double s) {
  if (kind == Potential::riesz && s < 0.0) {
    double scale = 0.0;
    for (auto v : f.coeffs()) scale = std::max(scale, std::abs(v));
    if (std::abs(f.mean()) > 1e-13 * std::max(scale, 1e-300) && std::abs(f.mean()) > 0.0)
      throw DomainError("negative-order Riesz potential needs a mean-zero field");
  }
}
}  // namespace

RealField fractional(const RealField& f, Potential kind, double s) {
  check_riesz(f, kind, s);
  return apply_real(kind == Potential::riesz ? symbols::riesz(s) : symbols::bessel(s), f);
}
ComplexField fractional(const ComplexField& f, Potential kind, double s) {
  check_riesz(f, kind, s);
  return apply(kind == Potential::riesz ? symbols::riesz(s) : symbols::bessel(s), f);
}

RealField free_propagate(const RealField& f, double t) { return apply_real(symbols::free_group(t), f); }
ComplexField free_propagate(const ComplexField& f, double t) { return apply(symbols::free_group(t), f); }
RealField derivative(const RealField& f, int order) { return apply_real(symbols::derivative(order), f); }
ComplexField derivative(const ComplexField& f, int order) { return apply(symbols::derivative(order), f); }

// ---------------------------------------------------------------- norms

template <FieldKind K>
double lebesgue_norm(const Field<K>& f, int p) {
  const auto s = f.samples();
  if (p == kLinf) return kernels::max_abs(s);
  if (p != 1 && p != 2 && p != 4) throw DomainError("Lebesgue exponent must be 1, 2, 4 or inf");
  const double sum = kernels::sum_abs_pow(s, p) * f.grid().dx();
  return std::pow(sum, 1.0 / p);
}

template <FieldKind K>
double sobolev_norm(const Field<K>& f, double s) {
  const auto& g = f.grid();
  std::vector<double> w(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) w[k] = std::pow(1.0 + g.xi(k) * g.xi(k), s);
  return std::sqrt(g.length() * kernels::weighted_sum_sq(f.coeffs(), w));
}

template double lebesgue_norm(const RealField&, int);
template double lebesgue_norm(const ComplexField&, int);
template double sobolev_norm(const RealField&, double);
template double sobolev_norm(const ComplexField&, double);

// ---------------------------------------------------------------- resampling

template <FieldKind K>
Field<K> refine(const Field<K>& f, std::size_t factor) {
  if (factor == 1) return f;
  const auto& g = f.grid();
  const auto fine = make_grid(g.size() * factor, g.lambda());
  std::vector<cplx> c(fine.size());
  const long half = static_cast<long>(g.size() / 2);
  for (long j = -half + 1; j < half; ++j) c[fft::slot(j, fine.size())] = f.coeff(j);
  return Field<K>(fine, std::move(c));
}

template <FieldKind K>
Field<K> truncate(const Field<K>& f, const SpatialGrid& coarse) {
  if (coarse.lambda() != f.grid().lambda() || coarse.size() > f.size())
    throw UsageError("truncate needs a coarser grid with the same period");
  std::vector<cplx> c(coarse.size());
  const long half = static_cast<long>(coarse.size() / 2);
  for (long j = -half + 1; j < half; ++j) c[fft::slot(j, coarse.size())] = f.coeff(j);
  return Field<K>(coarse, std::move(c));
}

template RealField refine(const RealField&, std::size_t);
template ComplexField refine(const ComplexField&, std::size_t);
template RealField truncate(const RealField&, const SpatialGrid&);
template ComplexField truncate(const ComplexField&, const SpatialGrid&);

ComplexField multiply(const ComplexField& a, const ComplexField& b) {
  if (!(a.grid() == b.grid())) throw UsageError("field grids differ");
  auto sa = a.samples();
  const auto sb = b.samples();
  kernels::multiply(sa, sa, sb);
  return ComplexField::from_samples(a.grid(), std::span<const cplx>(sa));
}

RealField multiply(const RealField& a, const RealField& b) {
  if (!(a.grid() == b.grid())) throw UsageError("field grids differ");
  auto sa = a.samples();
  const auto sb = b.samples();
  kernels::multiply(sa, sa, sb);
  return RealField::from_samples(a.grid(), std::span<const cplx>(sa));
}

ComplexField map_samples(const ComplexField& f, const std::function<cplx(cplx)>& fn) {
  auto s = f.samples();
  for (auto& v : s) v = fn(v);
  return ComplexField::from_samples(f.grid(), std::span<const cplx>(s));
}

ComplexField map_samples(const RealField& f, const std::function<cplx(double)>& fn) {
  const auto r = f.real_samples();
  std::vector<cplx> s(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) s[j] = fn(r[j]);
  return ComplexField::from_samples(f.grid(), std::span<const cplx>(s));
}

template <FieldKind K>
double relative_gap(const Field<K>& a, const Field<K>& b) {
  const double na = sobolev_norm(a, 0.0), nb = sobolev_norm(b, 0.0);
  const double d = sobolev_norm(a - b, 0.0);
  const double m = std::max(na, nb);
  return m == 0.0 ? 0.0 : d / m;
}

template double relative_gap(const RealField&, const RealField&);
template double relative_gap(const ComplexField&, const ComplexField&);

}  // namespace bogl
