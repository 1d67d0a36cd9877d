// SPDX-License-Identifier: Apache-2.0
#pragma once

// Partitions of Q_n, n = 2^s - 1, into induced paths on n + 1 vertices whose
// endpoints are antipodal.

#include <cstdint>
#include <vector>

#include "cubepack/certificate.hpp"
#include "cubepack/grid.hpp"

namespace cubepack::antipodal {

struct AntipodalDecomposition {
  int s = 0;
  int n = 0;  // 2^s - 1
  /// Each path lists its n + 1 vertex ids in path order.
  std::vector<std::vector<VertexId>> paths;

  /// Placements of P_{n+1} (pattern box [n+1]) in induced mode on Q_n.
  PackingCertificate to_certificate() const;
};

/// Built by doubling: from the decomposition of Q_n, every path of Q_{2n+1}
/// is a first-half path P (second half fixed at y, new coordinate 0), one
/// step across the new coordinate, then a second-half path starting at y
/// (first half fixed at the end of P). Pairs are matched by a linear labelling
/// of Q_n so that both layers are tiled.
AntipodalDecomposition ramras_decomposition(int s);

}  // namespace cubepack::antipodal
