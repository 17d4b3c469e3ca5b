#pragma once

// Thin FFTW wrapper. forward() carries the 1/n factor so the output is the
// Fourier-series coefficient vector c_k = (1/n) sum_j u_j e^{-2 pi i jk/n};
// inverse() is the plain synthesis sum.

#include <complex>
#include <cstddef>
#include <span>

namespace bogl::fft {

using cplx = std::complex<double>;

void forward(std::span<const cplx> in, std::span<cplx> out);
void inverse(std::span<const cplx> in, std::span<cplx> out);

// Row-major rows x cols arrays; forward divides by rows*cols.
void forward2d(std::span<const cplx> in, std::span<cplx> out, std::size_t rows, std::size_t cols);
void inverse2d(std::span<const cplx> in, std::span<cplx> out, std::size_t rows, std::size_t cols);

// Signed index of FFT slot k in a length-n transform: k for k < n/2, else k - n.
inline long signed_index(std::size_t k, std::size_t n) {
  return k < n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}
// Inverse of signed_index for |j| < n/2 (and j = -n/2).
inline std::size_t slot(long j, std::size_t n) {
  return j >= 0 ? static_cast<std::size_t>(j) : static_cast<std::size_t>(j + static_cast<long>(n));
}

}  // namespace bogl::fft
