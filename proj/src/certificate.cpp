// SPDX-License-Identifier: Apache-2.0
#include "cubepack/certificate.hpp"

#include <algorithm>
#include <map>

namespace cubepack {

void PackingCertificate::canonicalize() {
  std::vector<std::pair<std::vector<VertexId>, std::size_t>> keys;
  keys.reserve(placements.size());
  for (std::size_t i = 0; i < placements.size(); ++i) keys.emplace_back(placements[i].sorted_image(), i);
  std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return placements[a.second].image < placements[b.second].image;
  });
  std::vector<Placement> sorted;
  sorted.reserve(placements.size());
  for (const auto& k : keys) sorted.push_back(std::move(placements[k.second]));
  placements = std::move(sorted);
  std::sort(uncovered.begin(), uncovered.end());
}

std::vector<VertexId> complement_of_union(const Box& host, const std::vector<Placement>& placements) {
  std::vector<std::uint8_t> hit(host.size(), 0);
  for (const auto& p : placements)
    for (VertexId v : p.image)
      if (host.contains(v)) hit[v] = 1;
  std::vector<VertexId> out;
  for (VertexId v = 0; v < host.size(); ++v)
    if (!hit[v]) out.push_back(v);
  return out;
}

void MultisetCover::canonicalize() {
  // Merge identical maps of identical patterns.
  std::map<std::vector<VertexId>, std::vector<std::size_t>> by_map;
  for (std::size_t i = 0; i < entries.size(); ++i) by_map[entries[i].placement.image].push_back(i);

  std::vector<CoverEntry> merged;
  merged.reserve(by_map.size());
  for (auto& [map, idxs] : by_map) {
    // Entries sharing a map but not a pattern stay separate.
    std::vector<std::size_t> pending = idxs;
    while (!pending.empty()) {
      CoverEntry e = entries[pending.front()];
      std::uint64_t total = 0;
      std::vector<std::size_t> rest;
      for (std::size_t i : pending) {
        const auto& cand = entries[i];
        if (*cand.placement.pattern == *e.placement.pattern && cand.placement.mode == e.placement.mode)
          total += cand.multiplicity;
        else
          rest.push_back(i);
      }
      if (modulus > 1) total %= modulus;
      if (total != 0) {
        e.multiplicity = static_cast<std::uint32_t>(total);
        merged.push_back(std::move(e));
      }
      pending = std::move(rest);
    }
  }

  std::vector<std::pair<std::vector<VertexId>, std::size_t>> keys;
  keys.reserve(merged.size());
  for (std::size_t i = 0; i < merged.size(); ++i) keys.emplace_back(merged[i].placement.sorted_image(), i);
  std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    const auto& pa = merged[a.second];
    const auto& pb = merged[b.second];
    if (pa.placement.image != pb.placement.image) return pa.placement.image < pb.placement.image;
    return pa.multiplicity < pb.multiplicity;
  });
  std::vector<CoverEntry> sorted;
  sorted.reserve(merged.size());
  for (const auto& k : keys) sorted.push_back(std::move(merged[k.second]));
  entries = std::move(sorted);
}

std::vector<std::shared_ptr<const PatternGraph>> collect_patterns(const std::vector<const Placement*>& placements) {
  std::vector<std::shared_ptr<const PatternGraph>> out;
  const PatternGraph* last = nullptr;
  for (const Placement* p : placements) {
    if (p->pattern.get() == last) continue;
    bool found = false;
    for (const auto& q : out)
      if (q == p->pattern || *q == *p->pattern) {
        found = true;
        break;
      }
    if (!found) out.push_back(p->pattern);
    last = p->pattern.get();
  }
  return out;
}

}  // namespace cubepack
