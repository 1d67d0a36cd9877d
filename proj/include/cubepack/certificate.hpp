// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cubepack/grid.hpp"

namespace cubepack {

/// Disjoint placements in a host plus the vertices they leave uncovered.
struct PackingCertificate {
  std::shared_ptr<const Box> host;
  std::vector<Placement> placements;
  std::vector<VertexId> uncovered;

  /// Sorts placements by canonical_less and the uncovered list ascending.
  void canonicalize();
};

/// Host vertices not hit by any placement image, ascending.
std::vector<VertexId> complement_of_union(const Box& host, const std::vector<Placement>& placements);

struct CoverEntry {
  Placement placement;
  std::uint32_t multiplicity = 1;
};

/// Placements with multiplicities; certifies coverage(v) == residue (mod
/// modulus) at every host vertex.
struct MultisetCover {
  std::shared_ptr<const Box> host;
  std::vector<CoverEntry> entries;
  std::uint32_t modulus = 1;
  std::uint32_t residue = 0;

  /// Merges entries with identical maps, reduces multiplicities into
  /// [0, modulus) when modulus > 1, drops zeros, and sorts by placement then
  /// multiplicity.
  void canonicalize();
};

/// Every distinct pattern referenced by a set of placements, in first-use
/// order. Patterns are compared by value.
std::vector<std::shared_ptr<const PatternGraph>> collect_patterns(const std::vector<const Placement*>& placements);

}  // namespace cubepack
