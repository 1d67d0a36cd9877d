// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <numeric>
#include <set>

#include "cubepack/audit.hpp"
#include "cubepack/error.hpp"
#include "cubepack/hampath.hpp"

namespace cubepack::hampath {
namespace {

std::uint64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
  return r;
}

// Closed form restated independently from the library.
std::uint64_t expected_uncovered(int l, int t, int n) {
  int v = 0;
  while (l % 2 == 0) {
    l /= 2;
    ++v;
  }
  if (v > 0 && l == 1) return 0;  // single vertices tile
  int m = 1;
  while (((std::uint64_t{1} << m) - 1) % static_cast<std::uint64_t>(l) != 0) ++m;
  const int rest = n - t * v;
  const int r = rest / m, a = rest % m;
  std::uint64_t sum = 0, pw = 1;
  for (int s = 0; s < t; ++s) {
    sum += choose(r, s) * pw;
    pw *= (std::uint64_t{1} << m) - 1;
  }
  return (std::uint64_t{1} << (t * v)) * (std::uint64_t{1} << a) * sum;
}

void check_packing(const PathPowerPacking& p) {
  for (const auto& c : p.copies) {
    ASSERT_EQ(static_cast<int>(c.blocks.size()), p.t);
    std::set<int> coords;
    for (const auto& b : c.blocks) {
      ASSERT_EQ(b.size(), p.l);
      ASSERT_TRUE(is_valid_block(p.host, b));
      for (int x : b.host_coords) ASSERT_TRUE(coords.insert(x).second) << "blocks share a coordinate";
      for (int x : b.host_coords) ASSERT_EQ(p.host.coordinate(c.base, x), 0);
    }
  }
  const auto rep = audit::verify_packing(p.to_certificate());
  ASSERT_TRUE(rep.valid) << (rep.failures.empty() ? "" : rep.failures.front().reason);
}

TEST(Gray, SmallCases) {
  EXPECT_EQ(gray_cycle_ids(1), (std::vector<VertexId>{0, 1}));
  EXPECT_EQ(gray_cycle_ids(2), (std::vector<VertexId>{0b00, 0b01, 0b11, 0b10}));
  EXPECT_EQ(gray_cycle(2)[2], (Vertex{{1, 1}}));
  EXPECT_THROW(gray_cycle_ids(0), ParameterError);
}

TEST(Gray, CyclicHammingOneUpTo16) {
  for (int n = 1; n <= 16; ++n) {
    const auto g = gray_cycle_ids(n);
    ASSERT_EQ(g.size(), std::size_t{1} << n);
    ASSERT_EQ(g.front(), 0u);
    std::vector<char> seen(g.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      ASSERT_FALSE(seen[g[i]]);
      seen[g[i]] = 1;
      ASSERT_EQ(std::popcount(g[i] ^ g[(i + 1) % g.size()]), 1);
    }
  }
}

TEST(MultOrder, Examples) {
  EXPECT_EQ(mult_order_of_two(1), 1);
  EXPECT_EQ(mult_order_of_two(3), 2);
  EXPECT_EQ(mult_order_of_two(5), 4);
  EXPECT_EQ(mult_order_of_two(9), 6);
  EXPECT_THROW(mult_order_of_two(4), ParameterError);
}

TEST(MultOrder, BruteForceAndDividesPhi) {
  for (int l = 3; l <= 10001; l += 2) {
    int m = 1;
    std::uint64_t x = 2 % static_cast<std::uint64_t>(l);
    while (x != 1) {
      x = x * 2 % static_cast<std::uint64_t>(l);
      ++m;
    }
    ASSERT_EQ(mult_order_of_two(l), m);
    int phi = 0;
    for (int a = 1; a <= l; ++a)
      if (std::gcd(a, l) == 1) ++phi;
    ASSERT_EQ(phi % m, 0);
  }
}

TEST(OddPacking, Examples) {
  auto p = pack_odd_path_power(3, 1, 2);
  EXPECT_EQ(p.copies.size(), 1u);
  EXPECT_EQ(p.uncovered.size(), 1u);
  EXPECT_EQ(pack_odd_path_power(3, 1, 4).uncovered.size(), 1u);
  EXPECT_EQ(pack_odd_path_power(3, 2, 4).uncovered.size(), 7u);
  EXPECT_THROW(pack_odd_path_power(3, 2, 3), SizingError);
  try {
    pack_odd_path_power(5, 2, 4);
    FAIL();
  } catch (const SizingError& e) {
    EXPECT_NE(std::string(e.what()).find("minimum n is 8"), std::string::npos);
  }
}

TEST(OddPacking, ExactCountAndAuditSweep) {
  for (int l : {1, 3, 5, 7})
    for (int t : {1, 2})
      for (int n = t * mult_order_of_two(l); n <= 14; ++n) {
        const auto p = pack_odd_path_power(l, t, n);
        ASSERT_EQ(p.uncovered.size(), expected_uncovered(l, t, n)) << l << " " << t << " " << n;
        ASSERT_EQ(p.uncovered.size(), odd_uncovered_count(l, t, n));
        check_packing(p);
      }
}

TEST(AnyPacking, Examples) {
  auto p = pack_any_path_power(2, 1, 1);
  EXPECT_EQ(p.copies.size(), 1u);
  EXPECT_TRUE(p.uncovered.empty());
  p = pack_any_path_power(6, 1, 3);
  EXPECT_EQ(p.uncovered.size(), 2u);
  check_packing(p);
  p = pack_any_path_power(4, 2, 6);
  check_packing(p);
  EXPECT_EQ(p.uncovered.size(), expected_uncovered(4, 2, 6));
}

TEST(AnyPacking, DoublingOrderIsZigZag) {
  const auto p = pack_any_path_power(2, 1, 1);
  EXPECT_EQ(p.copies[0].blocks[0].order, (std::vector<VertexId>{0, 1}));
  const auto q = pack_any_path_power(6, 1, 3);
  // Block of P_3 in Q_2 (0b01,0b11,0b10) doubled along coordinate 2.
  EXPECT_EQ(q.copies[0].blocks[0].order, (std::vector<VertexId>{0b010, 0b110, 0b100, 0b101, 0b111, 0b011}));
}

TEST(AnyPacking, SweepAndBoundedRatio) {
  for (int l : {2, 4, 6, 10, 12})
    for (int t : {1, 2}) {
      double worst = 0;
      for (int n = any_min_dimension(l, t); n <= 14; ++n) {
        const auto p = pack_any_path_power(l, t, n);
        ASSERT_EQ(p.uncovered.size(), expected_uncovered(l, t, n));
        ASSERT_EQ(p.uncovered.size(), any_uncovered_count(l, t, n));
        check_packing(p);
        const double ratio = static_cast<double>(p.uncovered.size()) / std::pow(n, t - 1);
        worst = std::max(worst, ratio);
      }
      RecordProperty("l" + std::to_string(l) + "_t" + std::to_string(t) + "_max_ratio", std::to_string(worst));
    }
}

}  // namespace
}  // namespace cubepack::hampath
