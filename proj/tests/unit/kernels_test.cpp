// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#include "cubepack/kernels.hpp"

namespace cubepack::kernels {
namespace {

std::vector<std::uint32_t> random_u32(std::size_t n, std::uint32_t bound, std::mt19937& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, bound);
  std::vector<std::uint32_t> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

std::vector<std::uint64_t> random_u64(std::size_t n, std::mt19937_64& rng, double density = 0.5) {
  std::bernoulli_distribution bit(density);
  std::vector<std::uint64_t> v(n, 0);
  for (auto& x : v)
    for (int b = 0; b < 64; ++b)
      if (bit(rng)) x |= std::uint64_t{1} << b;
  return v;
}

const std::vector<std::size_t> kLengths = {0, 1, 3, 7, 8, 9, 15, 16, 17, 31, 64, 100, 1023};

TEST(Dispatch, HonoursEnvironment) {
  const char* forced = std::getenv("CUBEPACK_SIMD");
  if (forced && std::strcmp(forced, "scalar") == 0)
    EXPECT_EQ(active_isa(), Isa::scalar);
  else
    EXPECT_EQ(active_isa() == Isa::avx2, avx2_available());
  EXPECT_EQ(to_string(Isa::scalar), "scalar");
  EXPECT_EQ(to_string(Isa::avx2), "avx2");
}

TEST(Scalar, SmallCases) {
  std::vector<std::uint32_t> v{1, 2, 2, 5};
  EXPECT_EQ(scalar::count_equal(v, 2), 2u);
  EXPECT_EQ(scalar::count_greater(v, 1), 3u);
  scalar::reduce_mod(v, 2);
  EXPECT_EQ(v, (std::vector<std::uint32_t>{1, 0, 0, 1}));
  std::vector<std::uint32_t> d{1, 2, 0}, s{2, 2, 2};
  scalar::axpy_mod(d, s, 2, 3);
  EXPECT_EQ(d, (std::vector<std::uint32_t>{2, 0, 1}));
  std::vector<std::uint64_t> a{0b1010, 0}, b{0b0010, 0};
  EXPECT_EQ(scalar::popcount(a), 2u);
  EXPECT_TRUE(scalar::andnot_any(a, b));
  EXPECT_FALSE(scalar::andnot_any(b, a));
  scalar::and_into(a, b);
  EXPECT_EQ(a[0], 0b0010u);
}

TEST(Dispatch, MatchesScalar) {
  std::mt19937 rng(1);
  std::mt19937_64 rng64(2);
  for (std::size_t n : kLengths) {
    auto v = random_u32(n, 9, rng);
    EXPECT_EQ(count_equal(v, 4), scalar::count_equal(v, 4));
    EXPECT_EQ(count_greater(v, 4), scalar::count_greater(v, 4));
    auto a = random_u64(n, rng64), b = random_u64(n, rng64);
    EXPECT_EQ(popcount(a), scalar::popcount(a));
    EXPECT_EQ(andnot_any(a, b), scalar::andnot_any(a, b));
  }
}

#if defined(CUBEPACK_HAVE_AVX2_KERNELS)
class Avx2 : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!avx2_available()) GTEST_SKIP() << "CPU lacks AVX2";
  }
};

TEST_F(Avx2, CountsMatchScalar) {
  std::mt19937 rng(3);
  for (std::size_t n : kLengths)
    for (std::uint32_t bound : {1u, 5u, 0xffffffffu}) {
      auto v = random_u32(n, bound, rng);
      for (std::uint32_t needle : {0u, 1u, 3u, 0xffffffffu}) {
        ASSERT_EQ(avx2::count_equal(v, needle), scalar::count_equal(v, needle));
        ASSERT_EQ(avx2::count_greater(v, needle), scalar::count_greater(v, needle));
      }
    }
}

TEST_F(Avx2, ReduceModMatchesScalar) {
  std::mt19937 rng(4);
  for (std::size_t n : kLengths)
    for (std::uint32_t modulus : {1u, 2u, 3u, 7u, 12u, 255u, 4095u, 4096u, 65537u})
      for (std::uint32_t bound : {100u, (1u << 24) - 1, 0xffffffffu}) {
        auto v = random_u32(n, bound, rng);
        auto w = v;
        avx2::reduce_mod(v, modulus);
        scalar::reduce_mod(w, modulus);
        ASSERT_EQ(v, w) << "n=" << n << " modulus=" << modulus << " bound=" << bound;
      }
}

TEST_F(Avx2, AxpyModMatchesScalar) {
  std::mt19937 rng(5);
  for (std::size_t n : kLengths)
    for (std::uint32_t modulus : {2u, 3u, 8u, 9u, 60u, 1000u, 4095u, 4096u, 100003u}) {
      auto d = random_u32(n, modulus - 1, rng);
      const auto s = random_u32(n, modulus - 1, rng);
      for (std::uint32_t f : {0u, 1u, modulus / 2, modulus - 1}) {
        auto d1 = d, d2 = d;
        avx2::axpy_mod(d1, s, f, modulus);
        scalar::axpy_mod(d2, s, f, modulus);
        ASSERT_EQ(d1, d2) << "n=" << n << " modulus=" << modulus << " f=" << f;
      }
    }
}

TEST_F(Avx2, BitsetKernelsMatchScalar) {
  std::mt19937_64 rng(6);
  for (std::size_t n : kLengths)
    for (double density : {0.0, 0.01, 0.5, 1.0}) {
      auto a = random_u64(n, rng, density), b = random_u64(n, rng, 1.0 - density);
      ASSERT_EQ(avx2::popcount(a), scalar::popcount(a));
      ASSERT_EQ(avx2::andnot_any(a, b), scalar::andnot_any(a, b));
      ASSERT_EQ(avx2::andnot_any(a, a), false);
      auto c1 = a, c2 = a;
      avx2::and_into(c1, b);
      scalar::and_into(c2, b);
      ASSERT_EQ(c1, c2);
    }
}
#endif

}  // namespace
}  // namespace cubepack::kernels
