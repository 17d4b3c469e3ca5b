#pragma once

// Periodic grids on R / 2 pi lambda Z, fields stored by their Fourier-series
// coefficients, diagonal Fourier multipliers and the basic norms.
//
// Coefficient convention: c(xi) = (1/N) sum_j u(x_j) e^{-i xi x_j}, stored in
// FFT order; slot k carries xi = j/lambda with j = k (k < N/2) or k - N.
// Plancherel reads ||u||_{L^2}^2 = 2 pi lambda * sum |c|^2.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace bogl {

using cplx = std::complex<double>;

class SpatialGrid {
 public:
  SpatialGrid() = default;

  std::size_t size() const { return n_; }
  double lambda() const { return lambda_; }
  double length() const;  // 2 pi lambda
  double dx() const { return length() / static_cast<double>(n_); }
  double x(std::size_t j) const { return dx() * static_cast<double>(j); }
  // Signed lattice index of slot k, and the frequency j/lambda.
  long index(std::size_t k) const;
  double xi(std::size_t k) const { return (*xi_)[k]; }
  std::span<const double> xis() const { return *xi_; }
  std::size_t nyquist_slot() const { return n_ / 2; }

  friend bool operator==(const SpatialGrid& a, const SpatialGrid& b) {
    return a.n_ == b.n_ && a.lambda_ == b.lambda_;
  }

 private:
  friend SpatialGrid make_grid(std::size_t n, double lambda);
  std::size_t n_ = 0;
  double lambda_ = 1.0;
  std::shared_ptr<const std::vector<double>> xi_;
};

// Throws DomainError unless n is a power of two >= 8 and lambda >= 1.
SpatialGrid make_grid(std::size_t n, double lambda = 1.0);

enum class FieldKind : std::uint8_t { real = 0, complex = 1 };

template <FieldKind K>
class Field {
 public:
  static constexpr FieldKind kind = K;

  Field() = default;
  // Zero field.
  explicit Field(SpatialGrid g) : grid_(std::move(g)), c_(grid_.size()) {}
  // From coefficients in FFT order. Real fields are Hermitian-symmetrised;
  // the Nyquist slot is zeroed for both kinds.
  Field(SpatialGrid g, std::vector<cplx> coeffs);

  static Field from_samples(const SpatialGrid& g, std::span<const double> samples);
  static Field from_samples(const SpatialGrid& g, std::span<const cplx> samples);
  // Samples f(x_j) of a callable.
  template <class Fn>
  static Field from_function(const SpatialGrid& g, Fn&& fn) {
    std::vector<cplx> s(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) s[j] = fn(g.x(j));
    return from_samples(g, std::span<const cplx>(s));
  }

  const SpatialGrid& grid() const { return grid_; }
  std::size_t size() const { return c_.size(); }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx coeff(long j) const;  // by signed lattice index
  std::vector<cplx> samples() const;
  // Real parts of the samples.
  std::vector<double> real_samples() const;
  cplx mean() const { return c_.empty() ? cplx{} : c_[0]; }

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double a);

 private:
  void normalize();
  SpatialGrid grid_;
  std::vector<cplx> c_;
};

using RealField = Field<FieldKind::real>;
using ComplexField = Field<FieldKind::complex>;

template <FieldKind K>
Field<K> operator+(Field<K> a, const Field<K>& b) { return a += b; }
template <FieldKind K>
Field<K> operator-(Field<K> a, const Field<K>& b) { return a -= b; }
template <FieldKind K>
Field<K> operator*(double s, Field<K> a) { return a *= s; }

ComplexField to_complex(const RealField& f);
// Throws DomainError if the imaginary part exceeds tol relative to the field.
RealField to_real(const ComplexField& f, double tol = 1e-10);
ComplexField scale(const ComplexField& f, cplx a);
ComplexField conj(const ComplexField& f);

// A diagonal operator in frequency. hermitian marks symbols with
// m(-xi) = conj(m(xi)), which map real fields to real fields.
struct Multiplier {
  std::string name;
  std::function<cplx(double)> symbol;
  bool hermitian = false;
};

Multiplier compose(const Multiplier& a, const Multiplier& b);
ComplexField apply(const Multiplier& m, const ComplexField& f);
ComplexField apply(const Multiplier& m, const RealField& f);
// Requires m.hermitian.
RealField apply_real(const Multiplier& m, const RealField& f);

namespace symbols {
Multiplier hilbert();              // -i sgn(xi), sgn(0) = 0
Multiplier derivative(int order = 1);  // (i xi)^order
Multiplier riesz(double s);        // |xi|^s, 0 at xi = 0 when s < 0
Multiplier bessel(double s);       // (1 + xi^2)^{s/2}
Multiplier japanese(double s);     // <xi>^s = (1 + |xi|)^s
Multiplier free_group(double t);   // e^{-i t |xi| xi}
Multiplier mean();                 // indicator of xi = 0
}  // namespace symbols

enum class Proj { plus, minus, hi, lo, HI, LO, plus_hi, plus_HI, minus_hi, dyadic, mean };

struct Projection {
  Proj which;
  double N = 1.0;  // for Proj::dyadic
};

Multiplier projection_symbol(Projection p);
ComplexField project(const ComplexField& f, Projection p);
ComplexField project(const RealField& f, Projection p);
// Real-preserving projections only (hi, lo, HI, LO, dyadic, mean).
RealField project_real(const RealField& f, Projection p);

RealField hilbert(const RealField& f);
enum class Potential { riesz, bessel };
// Riesz with s < 0 needs a mean-zero input (DomainError otherwise).
RealField fractional(const RealField& f, Potential kind, double s);
ComplexField fractional(const ComplexField& f, Potential kind, double s);
RealField free_propagate(const RealField& f, double t);
ComplexField free_propagate(const ComplexField& f, double t);
RealField derivative(const RealField& f, int order = 1);
ComplexField derivative(const ComplexField& f, int order = 1);

// Riemann-sum norms; p = 0 selects the sup norm.
constexpr int kLinf = 0;
template <FieldKind K>
double lebesgue_norm(const Field<K>& f, int p);
template <FieldKind K>
double sobolev_norm(const Field<K>& f, double s);

// Zero-padded copy on the grid with factor * N points (band-limited
// interpolation), and the inverse truncation |j| < N/2 onto a coarser grid.
template <FieldKind K>
Field<K> refine(const Field<K>& f, std::size_t factor);
template <FieldKind K>
Field<K> truncate(const Field<K>& f, const SpatialGrid& coarse);

// Pointwise sample product on the common grid (aliased; refine first to avoid that).
ComplexField multiply(const ComplexField& a, const ComplexField& b);
RealField multiply(const RealField& a, const RealField& b);
// Pointwise map of samples.
ComplexField map_samples(const ComplexField& f, const std::function<cplx(cplx)>& fn);
ComplexField map_samples(const RealField& f, const std::function<cplx(double)>& fn);

// Relative L2 distance ||a - b|| / max(||a||, ||b||), 0 if both vanish.
template <FieldKind K>
double relative_gap(const Field<K>& a, const Field<K>& b);

}  // namespace bogl
