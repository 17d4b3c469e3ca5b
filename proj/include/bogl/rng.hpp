#pragma once

// Philox4x64-10 counter-based generator (Salmon et al. constants).
//
// Streams are addressed by key = {seed, stream_id} and counter =
// {sample_index, block, 0, 0}; each block yields four 64-bit words. Uniform
// doubles take the top 53 bits, u = (w >> 11) * 2^-53, and normals come from
// Box-Muller on consecutive uniform pairs (1 - u1, u2):
//   r = sqrt(-2 ln(1 - u1)), z0 = r cos(2 pi u2), z1 = r sin(2 pi u2).

#include <array>
#include <cstdint>

namespace bogl::rng {

using Counter = std::array<std::uint64_t, 4>;
using Key = std::array<std::uint64_t, 2>;

inline constexpr std::uint64_t kM0 = 0xD2E7470EE14C6C93ULL;
inline constexpr std::uint64_t kM1 = 0xCA5A826395121157ULL;
inline constexpr std::uint64_t kW0 = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kW1 = 0xBB67AE8584CAA73BULL;

Counter philox4x64(Counter ctr, Key key);

class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t sample_index);
  std::uint64_t next_u64();
  double uniform();  // [0, 1)
  double normal();

 private:
  Key key_;
  std::uint64_t sample_;
  std::uint64_t block_ = 0;
  Counter buf_{};
  int pos_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace bogl::rng
