// SPDX-License-Identifier: Apache-2.0
#pragma once

// Induced copies of (P_l)^t: the staircase partition of H x P_{l-1} and the
// composition that packs Q_n with induced (P_l)^t leaving O(n^{t-1}) vertices.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cubepack/certificate.hpp"
#include "cubepack/grid.hpp"
#include "cubepack/hampath.hpp"

namespace cubepack::induced {

/// Staircase paths of [l] x [l-1] as (block position, path position) pairs,
/// 0-based. Path i (i = 0..l-2) runs up column i to row l-2-i, steps to
/// column i+1, and runs to row l-2. Each has l cells; together they
/// partition the l(l-1) cells.
std::vector<std::vector<std::pair<int, int>>> staircase_cells(int l);

struct StaircaseResult {
  std::shared_ptr<const Box> host;  // block host with one extra factor of length l-1
  std::vector<Placement> paths;     // l-1 placements of P_l, induced mode
};

/// Partition of block x P_{l-1} into l-1 induced paths on l vertices. The
/// block lives in `block_host`; the product host appends a factor [l-1].
StaircaseResult staircase_partition(const Box& block_host, const hampath::HamOrderedBlock& block);

/// Parameters of the composition for a given l and m:
/// a = 2^m mod l, b = 2^m - (l-1-a)(l-1).
struct InducedParams {
  int l = 0;
  int t = 0;
  int m = 0;
  int a = 0;
  int b = 0;
  int cube_dim = 0;  // 2^m - 1
  int base_dim = 0;  // n - t (2^m - 1)
};

/// Smallest m with 2^m >= l^2.
int default_m(int l);
/// Computes and checks (b > 0, b == -1 mod l, l | b+1). Throws ParameterError.
InducedParams induced_params(int l, int t, std::optional<int> m_override);
/// Smallest n accepted for (l, t, m).
int induced_min_dimension(int l, int t, std::optional<int> m_override);
/// Explicit constant K with uncovered <= K * n^{t-1} for every accepted n.
double induced_bound_constant(int l, int t, std::optional<int> m_override);
/// Closed form: 2^{t(2^m-1)} times the base packing's uncovered count.
std::uint64_t induced_uncovered_count(int l, int t, int n, std::optional<int> m_override);

struct InducedPacking {
  InducedParams params;
  Box host;
  /// Each copy lists its l^t vertices in (P_l)^t index order, plus the host
  /// coordinates of each of its t factors.
  std::vector<std::vector<VertexId>> copies;
  std::vector<std::vector<std::vector<int>>> copy_blocks;
  std::vector<VertexId> uncovered;

  PackingCertificate to_certificate() const;
};

InducedPacking induced_path_power_packing(int l, int t, int n, std::optional<int> m_override = std::nullopt);

}  // namespace cubepack::induced
