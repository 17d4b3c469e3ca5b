#include "bogl/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace bogl::kernels {
namespace {

// Written out by hand so the compiler never routes through __muldc3.
inline cplx cmul(cplx a, cplx b) {
  const double ar = a.real(), ai = a.imag(), br = b.real(), bi = b.imag();
  return {ar * br - ai * bi, ar * bi + ai * br};
}

void scale_real(cplx* x, const double* m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = {x[i].real() * m[i], x[i].imag() * m[i]};
}

void scale_complex(cplx* x, const cplx* m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = cmul(x[i], m[i]);
}

void multiply(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = cmul(a[i], b[i]);
}

void mul_add2(cplx* out, const cplx* a, const cplx* x, const cplx* b, const cplx* y,
              std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const cplx p = cmul(a[i], x[i]), q = cmul(b[i], y[i]);
    out[i] = {p.real() + q.real(), p.imag() + q.imag()};
  }
}

void accumulate(cplx* out, const cplx* a, const cplx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const cplx p = cmul(a[i], x[i]);
    out[i] = {out[i].real() + p.real(), out[i].imag() + p.imag()};
  }
}

double weighted_sum_sq(const cplx* x, const double* w, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * (x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
  return s;
}

double sum_abs_pow(const cplx* x, std::size_t n, int p) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double m2 = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    switch (p) {
      case 1: s += std::sqrt(m2); break;
      case 2: s += m2; break;
      default: s += m2 * m2; break;
    }
  }
  return s;
}

double max_abs(const cplx* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    m = std::max(m, x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
  return std::sqrt(m);
}

constexpr KernelTable kScalar{"scalar",   scale_real,      scale_complex, multiply, mul_add2,
                              accumulate, weighted_sum_sq, sum_abs_pow,   max_abs};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace bogl::kernels
