// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma and
// only entered after the dispatcher has checked the CPU flags.

#include "bogl/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace bogl::kernels {
namespace {

// Two complex doubles per register: [re0, im0, re1, im1].
inline __m256d load(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d ar = _mm256_movedup_pd(a);
  const __m256d ai = _mm256_permute_pd(a, 0xF);
  const __m256d bs = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs));
}

// |x|^2 for four complex values (order within the lanes is not preserved).
inline __m256d norm4(const cplx* p) {
  const __m256d a = load(p), b = load(p + 2);
  return _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v), hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v), hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(s, _mm_unpackhi_pd(s, s)));
}

inline cplx cmul1(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

void scale_real(cplx* x, const double* m, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // [m0, m0, m1, m1]
    const __m128d mm = _mm_loadu_pd(m + i);
    const __m256d w = _mm256_permute4x64_pd(_mm256_castpd128_pd256(mm), 0x50);
    store(x + i, _mm256_mul_pd(load(x + i), w));
  }
  for (; i < n; ++i) x[i] = {x[i].real() * m[i], x[i].imag() * m[i]};
}

void scale_complex(cplx* x, const cplx* m, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store(x + i, cmul(load(x + i), load(m + i)));
  for (; i < n; ++i) x[i] = cmul1(x[i], m[i]);
}

void multiply(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store(out + i, cmul(load(a + i), load(b + i)));
  for (; i < n; ++i) out[i] = cmul1(a[i], b[i]);
}

void mul_add2(cplx* out, const cplx* a, const cplx* x, const cplx* b, const cplx* y,
              std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    store(out + i, _mm256_add_pd(cmul(load(a + i), load(x + i)), cmul(load(b + i), load(y + i))));
  for (; i < n; ++i) {
    const cplx p = cmul1(a[i], x[i]), q = cmul1(b[i], y[i]);
    out[i] = {p.real() + q.real(), p.imag() + q.imag()};
  }
}

void accumulate(cplx* out, const cplx* a, const cplx* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    store(out + i, _mm256_add_pd(load(out + i), cmul(load(a + i), load(x + i))));
  for (; i < n; ++i) {
    const cplx p = cmul1(a[i], x[i]);
    out[i] = {out[i].real() + p.real(), out[i].imag() + p.imag()};
  }
}

double weighted_sum_sq(const cplx* x, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m128d ww = _mm_loadu_pd(w + i);
    const __m256d wv = _mm256_permute4x64_pd(_mm256_castpd128_pd256(ww), 0x50);
    const __m256d v = load(x + i);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(v, v), wv, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * (x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
  return s;
}

double sum_abs_pow(const cplx* x, std::size_t n, int p) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d m2 = norm4(x + i);
    switch (p) {
      case 1: acc = _mm256_add_pd(acc, _mm256_sqrt_pd(m2)); break;
      case 2: acc = _mm256_add_pd(acc, m2); break;
      default: acc = _mm256_fmadd_pd(m2, m2, acc); break;
    }
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double m2 = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    s += p == 1 ? std::sqrt(m2) : p == 2 ? m2 : m2 * m2;
  }
  return s;
}

double max_abs(const cplx* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, norm4(x + i));
  double m = hmax(acc);
  for (; i < n; ++i) m = std::max(m, x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
  return std::sqrt(m);
}

constexpr KernelTable kAvx2{"avx2",     scale_real,      scale_complex, multiply, mul_add2,
                            accumulate, weighted_sum_sq, sum_abs_pow,   max_abs};

}  // namespace

const KernelTable& avx2_table_impl() { return kAvx2; }

}  // namespace bogl::kernels
