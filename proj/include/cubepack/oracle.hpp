// SPDX-License-Identifier: Apache-2.0
#pragma once

// Brute-force searches used as ground truth on small hosts.

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "cubepack/certificate.hpp"
#include "cubepack/grid.hpp"

namespace cubepack::oracle {

enum class Status { sat, unsat, budget_exceeded };
std::string_view to_string(Status s);

struct Budget {
  std::uint64_t nodes = 100'000'000;
  double seconds = 0;  // 0 = no wall-clock limit
};

struct CoverResult {
  Status status = Status::unsat;
  std::optional<PackingCertificate> certificate;  // set iff sat
  std::uint64_t nodes = 0;
};

/// Perfect packing of `host` by copies of `pattern` in `mode`, by dancing
/// links. Candidates are all subgraph embeddings passing `mode`. Placements
/// through vertex 0 are tried one per orbit of the coordinate permutations
/// fixing vertex 0. seed 0 keeps canonical row order; other seeds shuffle it.
CoverResult exact_cover_search(std::shared_ptr<const Box> host, std::shared_ptr<const PatternGraph> pattern, Mode mode,
                               Budget budget = {}, std::uint64_t seed = 0);

struct HamiltonResult {
  Status status = Status::unsat;
  std::vector<VertexId> path;  // set iff sat
  std::uint64_t nodes = 0;
};

/// Hamilton path of Q_n in which every l consecutive vertices induce P_l.
/// l <= 3 (and 2^n < l) are answered by the Gray path; otherwise depth-first
/// search from vertex 0 with the first step fixed.
HamiltonResult consecutive_induced_hamilton(int n, int l, Budget budget = {});

/// True iff `path` is a Hamilton path of Q_n whose l-windows induce P_l.
bool is_window_induced_hamilton(int n, int l, const std::vector<VertexId>& path);

/// Every injective map of the pattern's vertices into `host` that sends
/// pattern edges to host edges. Throws BudgetExceeded past `limit` maps.
std::vector<std::vector<VertexId>> enumerate_subgraph_copies(const PatternGraph& pattern, const Box& host,
                                                             std::uint64_t limit = 10'000'000);

/// First-fit packing of Q_n by product copies of (P_3)^k: each factor is a
/// P_3 inside its own pair of host coordinates, other coordinates fixed.
/// Candidates are scanned in a seed-determined order (seed 0 = canonical).
PackingCertificate greedy_p3_power_packing(int k, int n, std::uint64_t seed = 0);

}  // namespace cubepack::oracle
