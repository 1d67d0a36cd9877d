// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "cubepack/audit.hpp"
#include "cubepack/error.hpp"
#include "cubepack/modcover.hpp"

namespace cubepack::modcover {
namespace {

// Pointwise coverage counted directly from the entries.
std::vector<std::uint64_t> coverage(const MultisetCover& c) {
  std::vector<std::uint64_t> cov(c.host->size(), 0);
  for (const auto& e : c.entries)
    for (VertexId v : e.placement.image) cov[v] += e.multiplicity;
  return cov;
}

PatternGraph edge() { return PatternGraph(Box::cube(1), {0, 1}); }
PatternGraph corner_p3() { return PatternGraph(Box::cube(2), {0b00, 0b01, 0b11}); }
PatternGraph p4_in_q2() { return PatternGraph(Box::cube(2), {0b00, 0b01, 0b11, 0b10}, {{0, 1}, {1, 2}, {2, 3}}); }

TEST(Shift, CoversEveryVertexSizeTimes) {
  for (const auto& h : {edge(), corner_p3(), PatternGraph::full(Box::cube(2))}) {
    for (int n = h.ambient().dimension(); n <= h.ambient().dimension() + 2; ++n) {
      const auto c = shift_l_partition(h, n);
      EXPECT_EQ(c.entries.size(), std::size_t{1} << n);
      for (auto v : coverage(c)) EXPECT_EQ(v, static_cast<std::uint64_t>(h.size()));
      EXPECT_TRUE(audit::verify_multiset(c).valid);
    }
  }
}

TEST(Shift, RejectsSmallN) { EXPECT_THROW(shift_l_partition(corner_p3(), 1), ParameterError); }

TEST(Lift, PreservesCoverage) {
  const auto base = shift_l_partition(corner_p3(), 2);
  const auto lifted = lift_to_path_power(base, 3);
  EXPECT_EQ(lifted.host->factors().size(), 2u);
  EXPECT_EQ(lifted.host->factor(0), 6);
  EXPECT_EQ(lifted.entries.size(), base.entries.size() * 9);
  for (auto v : coverage(lifted)) EXPECT_EQ(v, 3u);
  EXPECT_TRUE(audit::verify_multiset(lifted).valid);
}

TEST(OneModL, EdgeCornerAndP4) {
  for (const auto& h : {edge(), corner_p3(), p4_in_q2()}) {
    const auto c = one_mod_l_partition(h);
    const auto l = static_cast<std::uint64_t>(h.size());
    EXPECT_EQ(c.modulus, l);
    for (auto v : coverage(c)) EXPECT_EQ(v % l, 1 % l);
    for (const auto& e : c.entries) EXPECT_TRUE(validate_placement(e.placement).isometric);
    EXPECT_TRUE(audit::verify_multiset(c).valid);
  }
}

TEST(CongruenceSolve, FindsAndRejects) {
  auto host = std::make_shared<const Box>(Box::power(4, 1));
  auto pat = std::make_shared<const PatternGraph>(PatternGraph::full(Box({2})));
  auto gens = enumerate_placements(pat, host, Mode::isometric);
  // Edges of P_4: covering each vertex once mod 2 is possible.
  auto sol = congruence_cover_solve(host, gens, 2, 1);
  ASSERT_TRUE(sol);
  for (auto v : coverage(*sol)) EXPECT_EQ(v % 2, 1u);
  // Only the middle edge: the endpoints can never be hit.
  std::vector<Placement> mid;
  for (const auto& g : gens)
    if (g.sorted_image() == std::vector<VertexId>{1, 2}) mid.push_back(g);
  EXPECT_FALSE(congruence_cover_solve(host, mid, 2, 1));
}

}  // namespace
}  // namespace cubepack::modcover
