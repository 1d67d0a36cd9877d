// SPDX-License-Identifier: Apache-2.0
#pragma once

// Gray-code Hamilton cycles and the (not necessarily induced) packings of Q_n
// by products of Hamilton-ordered blocks.

#include <cstdint>
#include <vector>

#include "cubepack/certificate.hpp"
#include "cubepack/grid.hpp"

namespace cubepack::hampath {

/// Vertices of a block, listed along a Hamilton path. Vertex ids are host
/// ids whose only non-zero coordinates are in `host_coords`.
struct HamOrderedBlock {
  std::vector<int> host_coords;
  std::vector<VertexId> order;

  int size() const noexcept { return static_cast<int>(order.size()); }
};

/// True iff `order` has distinct entries supported on `host_coords`, and
/// consecutive entries are adjacent in `host`.
bool is_valid_block(const Box& host, const HamOrderedBlock& block);

/// Product of t blocks on pairwise disjoint coordinate sets, translated by
/// `base` (which is zero on every block coordinate).
struct BlockProductCopy {
  std::vector<HamOrderedBlock> blocks;
  VertexId base = 0;

  /// Image of the product vertex with block positions `pos` (one per block).
  VertexId vertex(std::span<const int> pos) const;
  /// All vertices, ordered with the first block's position most significant.
  std::vector<VertexId> vertices() const;
};

struct PathPowerPacking {
  Box host;
  int l = 0;
  int t = 0;
  std::vector<BlockProductCopy> copies;
  std::vector<VertexId> uncovered;

  /// Placements of the pattern (P_l)^t in subgraph mode, with per-block
  /// coordinate annotations.
  PackingCertificate to_certificate() const;
};

/// Reflected binary Gray code of Q_n, starting at the all-zeros vertex.
/// Entry i is the vertex id (coordinate 0 = most significant bit).
std::vector<VertexId> gray_cycle_ids(int n);
std::vector<Vertex> gray_cycle(int n);

/// Minimal m >= 1 with 2^m == 1 (mod l), for odd l >= 1.
int mult_order_of_two(int l);

/// Closed-form count of vertices the odd construction leaves uncovered:
/// 2^a * sum_{s<t} C(r,s) (2^m-1)^s with n = r m + a, 0 <= a < m.
std::uint64_t odd_uncovered_count(int l, int t, int n);
/// Same for any l: 2^{t v} times the odd count for the odd part of l on
/// Q_{n - t v}, where v is the 2-adic valuation of l.
std::uint64_t any_uncovered_count(int l, int t, int n);
/// Smallest n accepted by pack_any_path_power(l, t, n).
int any_min_dimension(int l, int t);

/// Packing of Q_n by copies of (P_l)^t, l odd: Q_n = (Q_m)^r x Q_a with each
/// Q_m cut along its Gray cycle into (2^m-1)/l segments plus the start vertex.
PathPowerPacking pack_odd_path_power(int l, int t, int n);

/// Any l >= 1: halves l until odd, then doubles each block with a new
/// coordinate per block, (b_1,0)..(b_k,0),(b_k,1)..(b_1,1).
PathPowerPacking pack_any_path_power(int l, int t, int n);

}  // namespace cubepack::hampath
