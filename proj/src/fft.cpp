#include "bogl/fft.hpp"

#include <fftw3.h>

#include <cassert>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace bogl::fft {
namespace {

using Key = std::tuple<std::size_t, std::size_t, int>;

// Plans are created once per shape with FFTW_UNALIGNED and executed through
// the new-array interface, which FFTW allows from several threads at once.
fftw_plan plan_for(std::size_t rows, std::size_t cols, int sign) {
  static std::mutex mu;
  static std::map<Key, fftw_plan> cache;
  std::lock_guard lock(mu);
  const Key key{rows, cols, sign};
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const std::size_t n = rows * cols;
  auto* a = fftw_alloc_complex(n);
  auto* b = fftw_alloc_complex(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fftw_plan p = rows == 1 ? fftw_plan_dft_1d(static_cast<int>(cols), a, b, sign, flags)
                          : fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols), a, b, sign, flags);
  fftw_free(a);
  fftw_free(b);
  cache.emplace(key, p);
  return p;
}

void run(std::span<const cplx> in, std::span<cplx> out, std::size_t rows, std::size_t cols, int sign) {
  assert(in.size() == rows * cols && out.size() == in.size());
  fftw_plan p = plan_for(rows, cols, sign);
  if (in.data() == out.data()) {
    // Plans are out-of-place; route in-place calls through a copy.
    std::vector<cplx> tmp(in.begin(), in.end());
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()), reinterpret_cast<fftw_complex*>(out.data()));
  } else {
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
  }
  if (sign == FFTW_FORWARD) {
    const double s = 1.0 / static_cast<double>(rows * cols);
    for (auto& v : out) v *= s;
  }
}

}  // namespace

void forward(std::span<const cplx> in, std::span<cplx> out) { run(in, out, 1, in.size(), FFTW_FORWARD); }
void inverse(std::span<const cplx> in, std::span<cplx> out) { run(in, out, 1, in.size(), FFTW_BACKWARD); }
void forward2d(std::span<const cplx> in, std::span<cplx> out, std::size_t rows, std::size_t cols) {
  run(in, out, rows, cols, FFTW_FORWARD);
}
void inverse2d(std::span<const cplx> in, std::span<cplx> out, std::size_t rows, std::size_t cols) {
  run(in, out, rows, cols, FFTW_BACKWARD);
}

}  // namespace bogl::fft
