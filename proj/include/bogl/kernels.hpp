#pragma once

// Data-parallel inner loops shared by the spectral, integrator and norm code.
//
// Every kernel has a scalar reference implementation. When the host supports
// AVX2+FMA an intrinsics variant is selected at first use; setting the
// environment variable BOGL_KERNELS=scalar (or =avx2) overrides the choice.
// The two variants agree to rounding, see tests/kernels_test.cpp.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace bogl::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  const char* name;
  // x[i] *= m[i]
  void (*scale_real)(cplx* x, const double* m, std::size_t n);
  // x[i] *= m[i]
  void (*scale_complex)(cplx* x, const cplx* m, std::size_t n);
  // out[i] = a[i] * b[i]
  void (*multiply)(cplx* out, const cplx* a, const cplx* b, std::size_t n);
  // out[i] = a[i] * x[i] + b[i] * y[i]
  void (*mul_add2)(cplx* out, const cplx* a, const cplx* x, const cplx* b, const cplx* y,
                   std::size_t n);
  // out[i] += a[i] * x[i]
  void (*accumulate)(cplx* out, const cplx* a, const cplx* x, std::size_t n);
  // sum_i w[i] |x[i]|^2
  double (*weighted_sum_sq)(const cplx* x, const double* w, std::size_t n);
  // sum_i |x[i]|^p for p in {1, 2, 4}
  double (*sum_abs_pow)(const cplx* x, std::size_t n, int p);
  // max_i |x[i]|
  double (*max_abs)(const cplx* x, std::size_t n);
};

const KernelTable& scalar_table();
// nullptr when the variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();
// The table selected for this process.
const KernelTable& active();
// Force a variant by name ("scalar" or "avx2"); returns false if unavailable.
bool select(std::string_view name);

// Span front-ends over the active table. Sizes must agree.
void scale(std::span<cplx> x, std::span<const double> m);
void scale(std::span<cplx> x, std::span<const cplx> m);
void multiply(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b);
void mul_add2(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> x,
              std::span<const cplx> b, std::span<const cplx> y);
void accumulate(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> x);
double weighted_sum_sq(std::span<const cplx> x, std::span<const double> w);
double sum_abs_pow(std::span<const cplx> x, int p);
double max_abs(std::span<const cplx> x);

}  // namespace bogl::kernels
