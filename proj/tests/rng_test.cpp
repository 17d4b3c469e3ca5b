#include <cmath>
#include <set>

#include "bogl/rng.hpp"
#include "doctest.h"

using namespace bogl::rng;

// Known answers from numpy.random.Philox (whose counter is incremented
// before the first block, so counter {0,..} there is {1,..} here).
TEST_CASE("philox4x64-10 known answers") {
  CHECK(philox4x64({1, 0, 0, 0}, {0, 0}) ==
        Counter{0x02f4ba6408e4d89bULL, 0x3dd62b0b9ca8c5b2ULL, 0x1c8667a55d902e79ULL, 0x907d7a052fd5b4dcULL});
  CHECK(philox4x64({2, 0, 0, 0}, {0, 0}) ==
        Counter{0x809bf322883987c3ULL, 0x471128b9e807f7ddULL, 0xf250ba0dbec065b7ULL, 0xfc6ed66767a457bcULL});
  CHECK(philox4x64({42, 7, 0, 3}, {0x0123456789abcdefULL, 0xfedcba9876543210ULL}) ==
        Counter{0x7edb69c2937091fdULL, 0x8ba2a7a70ac8224dULL, 0x8d659659ebde4eb0ULL, 0xaf3b9c3044d03c44ULL});
}

TEST_CASE("streams are reproducible and distinct") {
  Stream a(5, 1, 0), b(5, 1, 0), c(5, 1, 1), d(5, 2, 0);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 16; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    seen.insert(x);
    seen.insert(c.next_u64());
    seen.insert(d.next_u64());
  }
  CHECK(seen.size() == 48);
}

TEST_CASE("normal deviates have unit moments") {
  Stream s(11, 0, 0);
  const int n = 200000;
  double m1 = 0, m2 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = s.normal();
    m1 += z;
    m2 += z * z;
  }
  CHECK(std::abs(m1 / n) < 0.01);
  CHECK(std::abs(m2 / n - 1) < 0.01);
  Stream u(11, 0, 0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}
