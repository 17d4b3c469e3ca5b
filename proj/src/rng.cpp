#include "bogl/rng.hpp"

#include <cmath>
#include <numbers>

namespace bogl::rng {
namespace {

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

}  // namespace

Counter philox4x64(Counter c, Key k) {
  for (int r = 0; r < 10; ++r) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kW0;
    k[1] += kW1;
  }
  return c;
}

Stream::Stream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t sample_index)
    : key_{seed, stream_id}, sample_(sample_index) {}

std::uint64_t Stream::next_u64() {
  if (pos_ == 4) {
    buf_ = philox4x64({sample_, block_++, 0, 0}, key_);
    pos_ = 0;
  }
  return buf_[pos_++];
}

double Stream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Stream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform(), u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

}  // namespace bogl::rng
