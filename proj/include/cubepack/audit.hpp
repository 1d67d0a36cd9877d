// SPDX-License-Identifier: Apache-2.0
#pragma once

// Independent checks of certificates, plus the codimension-1 classifier and
// the separating-family audits for (P_3)^k packings.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cubepack/certificate.hpp"
#include "cubepack/grid.hpp"

namespace cubepack::audit {

struct Failure {
  std::int64_t placement = -1;  // -1: not tied to one placement
  std::string reason;
};

struct AuditReport {
  bool valid = true;
  /// Strongest mode each placement satisfies (nullopt: none, or malformed).
  std::vector<std::optional<Mode>> mode_verified;
  std::vector<VertexId> uncovered;
  /// Raw coverage value -> number of host vertices.
  std::map<std::uint64_t, std::uint64_t> coverage_histogram;
  /// Coverage mod the cover's modulus -> number of vertices (covers only).
  std::map<std::uint32_t, std::uint64_t> residue_histogram;
  /// Vertices whose coverage residue is wrong (covers only).
  std::vector<VertexId> failing_vertices;
  std::vector<Failure> failures;
};

/// Disjointness, per-placement mode, and uncovered == host minus union.
AuditReport verify_packing(const PackingCertificate& cert);
/// Coverage with multiplicities == residue (mod modulus) at every vertex.
AuditReport verify_multiset(const MultisetCover& cover);

enum class Codim1Class { empty, p3_pow_km1, p2_x_p3_pow_km1, p3_pow_k };
std::string_view to_string(Codim1Class c);

/// Intersection of a subgraph copy of (P_3)^k (pattern = the full box [3]^k)
/// in Q_n with the halfspace x_i = b, matched by pattern-index slabs: all,
/// nothing, one layer of one pattern coordinate, or two consecutive layers.
/// Throws InvalidPlacement for an invalid copy and ClassificationFailure when
/// no shape matches.
Codim1Class classify_codim1_intersection(const Placement& copy, int coordinate, int side);

struct SeparatingReport {
  int n = 0;
  int k = 1;
  std::size_t size = 0;
  bool is_separating = false;
  /// First unseparated (A, B), 0-based coordinates; A must be contained, B avoided.
  std::optional<std::pair<std::vector<int>, std::vector<int>>> witness;
  double implied_bound = 0;  // k * log2(n)
  bool meets_bound = false;  // size >= implied_bound
};

/// Reads each vertex as the subset {i : x_i = 1} of [n] and checks that for
/// all disjoint k-sets A, B some member contains A and misses B.
SeparatingReport separating_audit(std::span<const VertexId> uncovered, int n, int k = 1);

struct Codim2Report {
  bool passed = false;
  bool packing_valid = false;  // false: verify_packing failed, nothing else checked
  std::uint64_t subcubes_checked = 0;
  std::vector<std::string> failures;
};

/// For a packing of Q_n by (P_3)^k: every subcube {x_i = 1, x_j = 0} holds an
/// uncovered vertex, and for k >= 3 every copy meets every codimension-2
/// subcube in a multiple of 3 vertices.
Codim2Report codim2_coverage_check(const PackingCertificate& cert);

nlohmann::json to_json(const AuditReport& report, const Box& host);
nlohmann::json to_json(const SeparatingReport& report);
nlohmann::json to_json(const Codim2Report& report);

}  // namespace cubepack::audit
