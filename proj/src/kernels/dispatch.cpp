#include "bogl/kernels.hpp"

#include <atomic>
#include <cassert>
#include <cstdlib>
#include <string_view>

namespace bogl::kernels {

#ifdef BOGL_HAVE_AVX2
const KernelTable& avx2_table_impl();
#endif

const KernelTable* avx2_table() {
#ifdef BOGL_HAVE_AVX2
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok ? &avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable* initial() {
  if (const char* env = std::getenv("BOGL_KERNELS")) {
    const std::string_view v(env);
    if (v == "scalar") return &scalar_table();
    if (v == "avx2" && avx2_table()) return avx2_table();
  }
  if (const KernelTable* t = avx2_table()) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> t{initial()};
  return t;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

bool select(std::string_view name) {
  if (name == "scalar") {
    current().store(&scalar_table());
    return true;
  }
  if (name == "avx2" && avx2_table()) {
    current().store(avx2_table());
    return true;
  }
  return false;
}

void scale(std::span<cplx> x, std::span<const double> m) {
  assert(x.size() == m.size());
  active().scale_real(x.data(), m.data(), x.size());
}
void scale(std::span<cplx> x, std::span<const cplx> m) {
  assert(x.size() == m.size());
  active().scale_complex(x.data(), m.data(), x.size());
}
void multiply(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b) {
  assert(out.size() == a.size() && a.size() == b.size());
  active().multiply(out.data(), a.data(), b.data(), out.size());
}
void mul_add2(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> x,
              std::span<const cplx> b, std::span<const cplx> y) {
  assert(out.size() == a.size() && a.size() == x.size() && x.size() == b.size() && b.size() == y.size());
  active().mul_add2(out.data(), a.data(), x.data(), b.data(), y.data(), out.size());
}
void accumulate(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> x) {
  assert(out.size() == a.size() && a.size() == x.size());
  active().accumulate(out.data(), a.data(), x.data(), out.size());
}
double weighted_sum_sq(std::span<const cplx> x, std::span<const double> w) {
  assert(x.size() == w.size());
  return active().weighted_sum_sq(x.data(), w.data(), x.size());
}
double sum_abs_pow(std::span<const cplx> x, int p) { return active().sum_abs_pow(x.data(), x.size(), p); }
double max_abs(std::span<const cplx> x) { return active().max_abs(x.data(), x.size()); }

}  // namespace bogl::kernels
