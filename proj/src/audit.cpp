// SPDX-License-Identifier: Apache-2.0
#include "cubepack/audit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "cubepack/error.hpp"
#include "cubepack/kernels.hpp"

namespace cubepack::audit {

namespace {

constexpr std::size_t kMaxVertexFailures = 64;
constexpr VertexId kMaxHost = VertexId{1} << 28;

void fail(AuditReport& r, std::int64_t placement, std::string reason) {
  r.failures.push_back(Failure{placement, std::move(reason)});
}

// Validates one placement against the host and records its strongest mode.
bool check_placement(AuditReport& r, const Box& host, const Placement& p, std::int64_t id) {
  if (!p.host || !(*p.host == host)) {
    r.mode_verified.push_back(std::nullopt);
    fail(r, id, "placement host differs from certificate host");
    return false;
  }
  try {
    const ValidityReport v = validate_placement(p);
    r.mode_verified.push_back(v.strongest());
    if (!v.holds(p.mode)) fail(r, id, "not a valid " + std::string(to_string(p.mode)) + " copy");
  } catch (const InvalidPlacement& e) {
    r.mode_verified.push_back(std::nullopt);
    fail(r, id, e.what());
    return false;
  }
  return true;
}

std::uint64_t ipow3(int k) {
  std::uint64_t r = 1;
  while (k-- > 0) r *= 3;
  return r;
}

bool is_p3_power(const PatternGraph& p, int& k) {
  const Box& a = p.ambient();
  for (int len : a.factors())
    if (len != 3) return false;
  k = a.dimension();
  return k >= 1 && static_cast<std::uint64_t>(p.size()) == ipow3(k);
}

std::string vertex_text(const Box& host, VertexId v) { return to_string(host.decode(v)); }

}  // namespace

AuditReport verify_packing(const PackingCertificate& cert) {
  AuditReport r;
  if (!cert.host) {
    fail(r, -1, "certificate has no host");
    r.valid = false;
    return r;
  }
  const Box& host = *cert.host;
  if (host.size() > kMaxHost) throw SizingError("host too large to audit: " + to_string(host));
  const auto n = static_cast<std::size_t>(host.size());
  std::vector<std::uint32_t> cov(n, 0);
  std::vector<std::int64_t> owner(n, -1);
  std::size_t overlaps = 0;
  for (std::size_t i = 0; i < cert.placements.size(); ++i) {
    const auto id = static_cast<std::int64_t>(i);
    const Placement& p = cert.placements[i];
    if (!check_placement(r, host, p, id)) continue;
    for (VertexId v : p.image) {
      if (cov[v]++ > 0 && overlaps++ < kMaxVertexFailures)
        fail(r, id, "vertex " + vertex_text(host, v) + " also covered by placement " + std::to_string(owner[v]) +
                        " (disjointness)");
      owner[v] = id;
    }
  }
  if (overlaps > kMaxVertexFailures)
    fail(r, -1, std::to_string(overlaps - kMaxVertexFailures) + " further overlapping vertices");

  for (std::size_t v = 0; v < n; ++v)
    if (cov[v] == 0) r.uncovered.push_back(v);
  std::vector<VertexId> declared = cert.uncovered;
  std::sort(declared.begin(), declared.end());
  if (declared != r.uncovered)
    fail(r, -1, "declared uncovered list (" + std::to_string(declared.size()) + " vertices) differs from host minus union (" +
                    std::to_string(r.uncovered.size()) + " vertices)");

  const std::uint32_t top = n == 0 ? 0 : *std::max_element(cov.begin(), cov.end());
  for (std::uint32_t c = 0; c <= top; ++c) {
    const std::size_t cnt = kernels::count_equal(cov, c);
    if (cnt) r.coverage_histogram[c] = cnt;
  }
  r.valid = r.failures.empty();
  return r;
}

AuditReport verify_multiset(const MultisetCover& cover) {
  AuditReport r;
  if (!cover.host) {
    fail(r, -1, "cover has no host");
    r.valid = false;
    return r;
  }
  if (cover.modulus == 0) {
    fail(r, -1, "modulus must be >= 1");
    r.valid = false;
    return r;
  }
  const Box& host = *cover.host;
  if (host.size() > kMaxHost) throw SizingError("host too large to audit: " + to_string(host));
  const auto n = static_cast<std::size_t>(host.size());
  std::vector<std::uint64_t> cov(n, 0);
  for (std::size_t i = 0; i < cover.entries.size(); ++i) {
    const auto id = static_cast<std::int64_t>(i);
    const auto& e = cover.entries[i];
    if (e.multiplicity == 0) fail(r, id, "multiplicity must be >= 1");
    if (!check_placement(r, host, e.placement, id)) continue;
    for (VertexId v : e.placement.image) cov[v] += e.multiplicity;
  }

  std::vector<std::uint32_t> residue(n);
  for (std::size_t v = 0; v < n; ++v) {
    residue[v] = static_cast<std::uint32_t>(cov[v] % cover.modulus);
    ++r.coverage_histogram[cov[v]];
    if (cov[v] == 0) r.uncovered.push_back(v);
  }
  if (cover.modulus <= 64) {
    for (std::uint32_t c = 0; c < cover.modulus; ++c) {
      const std::size_t cnt = kernels::count_equal(residue, c);
      if (cnt) r.residue_histogram[c] = cnt;
    }
  } else {
    for (std::uint32_t x : residue) ++r.residue_histogram[x];
  }
  const std::uint32_t target = cover.residue % cover.modulus;
  for (std::size_t v = 0; v < n; ++v)
    if (residue[v] != target) r.failing_vertices.push_back(v);
  if (!r.failing_vertices.empty()) {
    const VertexId v = r.failing_vertices.front();
    fail(r, -1, std::to_string(r.failing_vertices.size()) + " vertices have coverage != " + std::to_string(target) +
                    " (mod " + std::to_string(cover.modulus) + "), first " + vertex_text(host, v) + " with coverage " +
                    std::to_string(cov[v]));
  }
  r.valid = r.failures.empty();
  return r;
}

std::string_view to_string(Codim1Class c) {
  switch (c) {
    case Codim1Class::empty: return "EMPTY";
    case Codim1Class::p3_pow_km1: return "P3_POW_KM1";
    case Codim1Class::p2_x_p3_pow_km1: return "P2_X_P3_POW_KM1";
    case Codim1Class::p3_pow_k: return "P3_POW_K";
  }
  return "?";
}

Codim1Class classify_codim1_intersection(const Placement& copy, int coordinate, int side) {
  int k = 0;
  if (!copy.pattern || !is_p3_power(*copy.pattern, k)) throw InvalidPlacement("pattern is not the full box [3]^k");
  if (!copy.host || !copy.host->is_cube()) throw InvalidPlacement("host is not a hypercube");
  if (coordinate < 0 || coordinate >= copy.host->dimension()) throw ParameterError("coordinate out of range");
  if (side != 0 && side != 1) throw ParameterError("side must be 0 or 1");
  if (!validate_placement(copy).subgraph) throw InvalidPlacement("not a subgraph copy of (P_3)^k");

  const Box& amb = copy.pattern->ambient();
  const auto total = static_cast<std::size_t>(copy.pattern->size());
  std::vector<char> in(total, 0);
  std::size_t count = 0;
  for (std::size_t j = 0; j < total; ++j) {
    // Pattern index j is the box vertex j: pattern vertices are listed in index order.
    const VertexId pv = copy.pattern->vertex(static_cast<int>(j));
    if (copy.host->coordinate(copy.image[j], coordinate) == side) {
      in[static_cast<std::size_t>(pv)] = 1;
      ++count;
    }
  }
  if (count == 0) return Codim1Class::empty;
  if (count == total) return Codim1Class::p3_pow_k;

  for (int d = 0; d < k; ++d) {
    std::size_t layer[3] = {0, 0, 0};
    for (std::size_t v = 0; v < total; ++v)
      if (in[v]) ++layer[amb.coordinate(v, d)];
    const std::size_t slab = total / 3;
    int full = 0, mask = 0;
    bool clean = true;
    for (int w = 0; w < 3; ++w) {
      if (layer[w] == slab) {
        ++full;
        mask |= 1 << w;
      } else if (layer[w] != 0) {
        clean = false;
      }
    }
    if (!clean) continue;
    if (full == 1) return Codim1Class::p3_pow_km1;
    if (full == 2 && (mask == 0b011 || mask == 0b110)) return Codim1Class::p2_x_p3_pow_km1;
  }
  throw ClassificationFailure("intersection of " + std::to_string(count) + " vertices with x_" +
                              std::to_string(coordinate) + " = " + std::to_string(side) + " matches no admissible shape");
}

SeparatingReport separating_audit(std::span<const VertexId> uncovered, int n, int k) {
  if (n < 2) throw ParameterError("separating_audit needs n >= 2");
  if (n > 63) throw ParameterError("separating_audit needs n <= 63");
  if (k < 1 || 2 * k > n) throw ParameterError("k must satisfy 1 <= k and 2k <= n");
  SeparatingReport rep;
  rep.n = n;
  rep.k = k;
  rep.size = uncovered.size();
  rep.implied_bound = k * std::log2(static_cast<double>(n));
  rep.meets_bound = static_cast<double>(rep.size) + 1e-9 >= rep.implied_bound;

  // cols[c] bit s: uncovered vertex s has x_c = 1.
  const std::size_t words = std::max<std::size_t>(1, (uncovered.size() + 63) / 64);
  std::vector<std::vector<std::uint64_t>> cols(static_cast<std::size_t>(n), std::vector<std::uint64_t>(words, 0));
  for (std::size_t s = 0; s < uncovered.size(); ++s)
    for (int c = 0; c < n; ++c)
      if (uncovered[s] >> (n - 1 - c) & 1) cols[static_cast<std::size_t>(c)][s / 64] |= std::uint64_t{1} << (s % 64);

  std::vector<int> a, b;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::vector<std::uint64_t> all_a(words), any_b(words);
  bool ok = true;
  // Enumerates k-sets B disjoint from a fixed A.
  std::function<bool(int)> pick_b = [&](int from) {
    if (static_cast<int>(b.size()) == k) {
      std::fill(any_b.begin(), any_b.end(), 0);
      for (int c : b)
        for (std::size_t w = 0; w < words; ++w) any_b[w] |= cols[static_cast<std::size_t>(c)][w];
      if (!kernels::andnot_any(all_a, any_b)) {
        rep.witness = std::make_pair(a, b);
        return false;
      }
      return true;
    }
    for (int c = from; c < n; ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      b.push_back(c);
      const bool go = pick_b(c + 1);
      b.pop_back();
      if (!go) return false;
    }
    return true;
  };
  std::function<bool(int)> pick_a = [&](int from) {
    if (static_cast<int>(a.size()) == k) {
      std::fill(all_a.begin(), all_a.end(), ~std::uint64_t{0});
      for (int c : a) kernels::and_into(all_a, cols[static_cast<std::size_t>(c)]);
      return pick_b(0);
    }
    for (int c = from; c < n; ++c) {
      a.push_back(c);
      used[static_cast<std::size_t>(c)] = 1;
      const bool go = pick_a(c + 1);
      used[static_cast<std::size_t>(c)] = 0;
      a.pop_back();
      if (!go) return false;
    }
    return true;
  };
  ok = pick_a(0);
  rep.is_separating = ok;
  return rep;
}

Codim2Report codim2_coverage_check(const PackingCertificate& cert) {
  Codim2Report rep;
  const AuditReport base = verify_packing(cert);
  rep.packing_valid = base.valid;
  if (!base.valid) {
    rep.failures.push_back("verify_packing failed; codimension-2 checks skipped");
    return rep;
  }
  const Box& host = *cert.host;
  if (!host.is_cube()) {
    rep.failures.push_back("host is not a hypercube");
    return rep;
  }
  const int n = host.dimension();
  int k = 0;
  for (std::size_t c = 0; c < cert.placements.size(); ++c)
    if (!is_p3_power(*cert.placements[c].pattern, k)) {
      rep.failures.push_back("placement " + std::to_string(c) + " is not a copy of (P_3)^k");
      return rep;
    }

  std::vector<char> hit(static_cast<std::size_t>(n * n), 0);
  for (VertexId u : base.uncovered)
    for (int i = 0; i < n; ++i) {
      if (!(u >> (n - 1 - i) & 1)) continue;
      for (int j = 0; j < n; ++j)
        if (!(u >> (n - 1 - j) & 1)) hit[static_cast<std::size_t>(i * n + j)] = 1;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      ++rep.subcubes_checked;
      if (!hit[static_cast<std::size_t>(i * n + j)])
        rep.failures.push_back("subcube x_" + std::to_string(i) + " = 1, x_" + std::to_string(j) +
                               " = 0 has no uncovered vertex");
    }

  for (std::size_t c = 0; c < cert.placements.size(); ++c) {
    const auto& p = cert.placements[c];
    int kc = 0;
    is_p3_power(*p.pattern, kc);
    if (kc < 3) continue;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        std::size_t cnt[4] = {0, 0, 0, 0};
        for (VertexId v : p.image) ++cnt[(v >> (n - 1 - i) & 1) * 2 + (v >> (n - 1 - j) & 1)];
        for (int s = 0; s < 4; ++s)
          if (cnt[s] % 3 != 0)
            rep.failures.push_back("placement " + std::to_string(c) + " meets subcube x_" + std::to_string(i) + " = " +
                                   std::to_string(s >> 1) + ", x_" + std::to_string(j) + " = " + std::to_string(s & 1) +
                                   " in " + std::to_string(cnt[s]) + " vertices");
      }
  }
  rep.passed = rep.failures.empty();
  return rep;
}

nlohmann::json to_json(const AuditReport& report, const Box& host) {
  nlohmann::json j;
  j["valid"] = report.valid;
  auto& modes = j["mode_verified"] = nlohmann::json::array();
  for (const auto& m : report.mode_verified) modes.push_back(m ? nlohmann::json(std::string(to_string(*m))) : nlohmann::json());
  auto& unc = j["uncovered"] = nlohmann::json::array();
  for (VertexId v : report.uncovered) unc.push_back(vertex_text(host, v));
  j["uncovered_count"] = report.uncovered.size();
  auto& hist = j["coverage_histogram"] = nlohmann::json::object();
  for (const auto& [c, n] : report.coverage_histogram) hist[std::to_string(c)] = n;
  if (!report.residue_histogram.empty()) {
    auto& res = j["residue_histogram"] = nlohmann::json::object();
    for (const auto& [c, n] : report.residue_histogram) res[std::to_string(c)] = n;
    auto& fv = j["failing_vertices"] = nlohmann::json::array();
    for (VertexId v : report.failing_vertices) fv.push_back(vertex_text(host, v));
  }
  auto& fails = j["failures"] = nlohmann::json::array();
  for (const auto& f : report.failures) fails.push_back({{"placement", f.placement}, {"reason", f.reason}});
  return j;
}

nlohmann::json to_json(const SeparatingReport& report) {
  nlohmann::json j;
  j["n"] = report.n;
  j["k"] = report.k;
  j["size"] = report.size;
  j["is_separating"] = report.is_separating;
  j["implied_bound"] = report.implied_bound;
  j["meets_bound"] = report.meets_bound;
  if (report.witness) j["witness"] = {{"contain", report.witness->first}, {"avoid", report.witness->second}};
  return j;
}

nlohmann::json to_json(const Codim2Report& report) {
  return {{"passed", report.passed},
          {"packing_valid", report.packing_valid},
          {"subcubes_checked", report.subcubes_checked},
          {"failures", report.failures}};
}

}  // namespace cubepack::audit
