// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <bit>

#include "cubepack/antipodal.hpp"
#include "cubepack/audit.hpp"
#include "cubepack/error.hpp"
#include "cubepack/oracle.hpp"

namespace cubepack::antipodal {
namespace {

TEST(Ramras, BaseCase) {
  const auto d = ramras_decomposition(1);
  EXPECT_EQ(d.n, 1);
  ASSERT_EQ(d.paths.size(), 1u);
  EXPECT_EQ(d.paths[0], (std::vector<VertexId>{0, 1}));
}

TEST(Ramras, Q3HasTwoInducedAntipodalP4) {
  const auto d = ramras_decomposition(2);
  ASSERT_EQ(d.paths.size(), 2u);
  for (const auto& p : d.paths) EXPECT_EQ(std::popcount(p.front() ^ p.back()), 3);
  // Exhaustive search agrees that such a partition exists.
  auto host = std::make_shared<const Box>(Box::cube(3));
  auto pattern = std::make_shared<const PatternGraph>(PatternGraph::full(Box({4})));
  EXPECT_EQ(oracle::exact_cover_search(host, pattern, Mode::induced).status, oracle::Status::sat);
}

TEST(Ramras, PartitionsInducedAntipodalUpToQ15) {
  for (int s = 1; s <= 4; ++s) {
    const auto d = ramras_decomposition(s);
    const int n = (1 << s) - 1;
    ASSERT_EQ(d.n, n);
    ASSERT_EQ(d.paths.size(), (std::size_t{1} << n) / static_cast<std::size_t>(n + 1));
    for (const auto& p : d.paths) {
      ASSERT_EQ(p.size(), static_cast<std::size_t>(n + 1));
      ASSERT_EQ(std::popcount(p.front() ^ p.back()), n);
    }
    const auto cert = d.to_certificate();
    const auto rep = audit::verify_packing(cert);
    ASSERT_TRUE(rep.valid);
    EXPECT_TRUE(rep.uncovered.empty());
    for (const auto& m : rep.mode_verified) EXPECT_TRUE(m == Mode::induced || m == Mode::isometric);
  }
}

TEST(Ramras, Deterministic) { EXPECT_EQ(ramras_decomposition(3).paths, ramras_decomposition(3).paths); }

TEST(Ramras, RejectsBadS) {
  EXPECT_THROW(ramras_decomposition(0), ParameterError);
  EXPECT_THROW(ramras_decomposition(6), SizingError);
}

}  // namespace
}  // namespace cubepack::antipodal
