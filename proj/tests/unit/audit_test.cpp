// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <bit>

#include "cubepack/audit.hpp"
#include "cubepack/error.hpp"
#include "cubepack/hampath.hpp"
#include "cubepack/oracle.hpp"

namespace cubepack::audit {
namespace {

PackingCertificate edges_q2() {
  PackingCertificate c;
  c.host = std::make_shared<const Box>(Box::cube(2));
  auto pat = std::make_shared<const PatternGraph>(PatternGraph::full(Box({2})));
  c.placements = {Placement{pat, c.host, {0b00, 0b01}, Mode::induced, {}},
                  Placement{pat, c.host, {0b10, 0b11}, Mode::induced, {}}};
  return c;
}

TEST(VerifyPacking, AcceptsAndReports) {
  const auto rep = verify_packing(edges_q2());
  EXPECT_TRUE(rep.valid);
  ASSERT_EQ(rep.mode_verified.size(), 2u);
  EXPECT_EQ(rep.mode_verified[0], Mode::isometric);
  EXPECT_EQ(rep.coverage_histogram.at(1), 4u);
}

TEST(VerifyPacking, RejectsOverlapAndWrongUncovered) {
  auto c = edges_q2();
  c.placements[1].image = {0b01, 0b11};
  EXPECT_FALSE(verify_packing(c).valid);
  c = edges_q2();
  c.uncovered = {0b00};
  EXPECT_FALSE(verify_packing(c).valid);
  c = edges_q2();
  c.placements[1].image = {0b10, 0b01};  // not an edge
  EXPECT_FALSE(verify_packing(c).valid);
}

TEST(VerifyMultiset, ResidueChecked) {
  MultisetCover m;
  m.host = std::make_shared<const Box>(Box::cube(1));
  auto pat = std::make_shared<const PatternGraph>(PatternGraph::full(Box({2})));
  m.entries = {CoverEntry{Placement{pat, m.host, {0, 1}, Mode::induced, {}}, 2}};
  m.modulus = 2;
  m.residue = 0;
  EXPECT_TRUE(verify_multiset(m).valid);
  m.residue = 1;
  const auto rep = verify_multiset(m);
  EXPECT_FALSE(rep.valid);
  EXPECT_EQ(rep.failing_vertices.size(), 2u);
}

Placement p3_copy(int n, std::vector<VertexId> image) {
  auto host = std::make_shared<const Box>(Box::cube(n));
  auto pat = std::make_shared<const PatternGraph>(PatternGraph::full(Box({3})));
  return Placement{pat, host, std::move(image), Mode::subgraph, {}};
}

TEST(Codim1, AllClassesForK1) {
  const auto p = p3_copy(3, {0b000, 0b010, 0b110});
  EXPECT_EQ(classify_codim1_intersection(p, 0, 0), Codim1Class::p2_x_p3_pow_km1);
  EXPECT_EQ(classify_codim1_intersection(p, 0, 1), Codim1Class::p3_pow_km1);
  EXPECT_EQ(classify_codim1_intersection(p, 2, 0), Codim1Class::p3_pow_k);
  EXPECT_EQ(classify_codim1_intersection(p, 2, 1), Codim1Class::empty);
  EXPECT_EQ(to_string(Codim1Class::p3_pow_k), "P3_POW_K");
}

TEST(Codim1, RejectsInvalidCopy) {
  EXPECT_THROW(classify_codim1_intersection(p3_copy(3, {0b000, 0b011, 0b111}), 0, 0), InvalidPlacement);
}

TEST(Separating, Singletons) {
  const std::vector<VertexId> singles{0b100, 0b010, 0b001};
  const auto rep = separating_audit(singles, 3, 1);
  EXPECT_TRUE(rep.is_separating);
  EXPECT_TRUE(rep.meets_bound);
  const std::vector<VertexId> full{0b111};
  const auto bad = separating_audit(full, 3, 1);
  EXPECT_FALSE(bad.is_separating);
  ASSERT_TRUE(bad.witness);
  EXPECT_EQ(bad.witness->first.size(), 1u);
  EXPECT_THROW(separating_audit(full, 3, 2), ParameterError);
}

TEST(Separating, PairsNeedMore) {
  // Every 2-subset of [4] as a set: {0,1} vs {2,3} has a set containing {0,1}
  // and avoiding {2,3}, and likewise for all splits.
  std::vector<VertexId> pairs;
  for (VertexId v = 0; v < 16; ++v)
    if (std::popcount(v) == 2) pairs.push_back(v);
  EXPECT_TRUE(separating_audit(pairs, 4, 2).is_separating);
  pairs.pop_back();
  EXPECT_FALSE(separating_audit(pairs, 4, 2).is_separating);
}

TEST(Codim2, GreedyPasses) {
  // The subcube argument needs k = 3.
  for (int n : {6, 7}) {
    const auto rep = codim2_coverage_check(oracle::greedy_p3_power_packing(3, n));
    EXPECT_TRUE(rep.packing_valid);
    EXPECT_TRUE(rep.passed) << (rep.failures.empty() ? "" : rep.failures.front());
    EXPECT_EQ(rep.subcubes_checked, static_cast<std::uint64_t>(n * (n - 1)));
  }
}

TEST(Codim2, FailsWithoutUncoveredInSubcube) {
  // P_3 = 00,01,11 leaves 10 uncovered; subcube x_0 = 0, x_1 = 1 has no hole.
  PackingCertificate c;
  c.host = std::make_shared<const Box>(Box::cube(2));
  c.placements = {p3_copy(2, {0b00, 0b01, 0b11})};
  c.placements[0].host = c.host;
  c.uncovered = {0b10};
  const auto rep = codim2_coverage_check(c);
  EXPECT_TRUE(rep.packing_valid);
  EXPECT_FALSE(rep.passed);
}

TEST(Json, Fields) {
  const auto c = edges_q2();
  const auto j = to_json(verify_packing(c), *c.host);
  EXPECT_TRUE(j.at("valid").get<bool>());
  const std::vector<VertexId> singles{0b100, 0b010, 0b001};
  EXPECT_TRUE(to_json(separating_audit(singles, 3)).at("is_separating").get<bool>());
}

}  // namespace
}  // namespace cubepack::audit
