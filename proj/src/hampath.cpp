// SPDX-License-Identifier: Apache-2.0
#include "cubepack/hampath.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "cubepack/error.hpp"

namespace cubepack::hampath {

namespace {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int two_adic_valuation(int l) { return std::countr_zero(static_cast<unsigned>(l)); }

void check_lt(int l, int t) {
  if (l < 1) throw ParameterError("l must be >= 1, got " + std::to_string(l));
  if (t < 1) throw ParameterError("t must be >= 1, got " + std::to_string(t));
}

// Mask of block coordinates of a hypercube of dimension n.
VertexId coord_bit(int n, int coordinate) { return VertexId{1} << (n - 1 - coordinate); }

// Every vertex of Q_n as its own copy of (P_1)^t.
PathPowerPacking singletons(int t, int n) {
  PathPowerPacking out{Box::cube(n), 1, t, {}, {}};
  const std::vector<HamOrderedBlock> blocks(static_cast<std::size_t>(t), HamOrderedBlock{{}, {0}});
  for (VertexId v = 0; v < (VertexId{1} << n); ++v) out.copies.push_back(BlockProductCopy{blocks, v});
  return out;
}

}  // namespace

bool is_valid_block(const Box& host, const HamOrderedBlock& block) {
  if (block.order.empty()) return false;
  std::vector<char> allowed(static_cast<std::size_t>(host.dimension()), 0);
  for (int c : block.host_coords) {
    if (c < 0 || c >= host.dimension()) return false;
    allowed[static_cast<std::size_t>(c)] = 1;
  }
  std::vector<VertexId> sorted = block.order;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (VertexId v : block.order) {
    if (!host.contains(v)) return false;
    for (int c = 0; c < host.dimension(); ++c)
      if (!allowed[static_cast<std::size_t>(c)] && host.coordinate(v, c) != 0) return false;
  }
  for (std::size_t i = 1; i < block.order.size(); ++i)
    if (!host.adjacent(block.order[i - 1], block.order[i])) return false;
  return true;
}

VertexId BlockProductCopy::vertex(std::span<const int> pos) const {
  VertexId v = base;
  for (std::size_t i = 0; i < blocks.size(); ++i) v += blocks[i].order[static_cast<std::size_t>(pos[i])];
  return v;
}

std::vector<VertexId> BlockProductCopy::vertices() const {
  std::vector<VertexId> out{base};
  for (const auto& b : blocks) {
    std::vector<VertexId> next;
    next.reserve(out.size() * b.order.size());
    for (VertexId prefix : out)
      for (VertexId v : b.order) next.push_back(prefix + v);
    out = std::move(next);
  }
  return out;
}

PackingCertificate PathPowerPacking::to_certificate() const {
  PackingCertificate cert;
  cert.host = std::make_shared<const Box>(host);
  auto pattern = std::make_shared<const PatternGraph>(PatternGraph::full(Box::power(l, t)));
  cert.placements.reserve(copies.size());
  for (const auto& c : copies) {
    Placement p{pattern, cert.host, c.vertices(), Mode::subgraph, {}};
    for (const auto& b : c.blocks) {
      auto coords = b.host_coords;
      std::sort(coords.begin(), coords.end());
      p.blocks.push_back(std::move(coords));
    }
    cert.placements.push_back(std::move(p));
  }
  cert.uncovered = uncovered;
  cert.canonicalize();
  return cert;
}

std::vector<VertexId> gray_cycle_ids(int n) {
  if (n < 1) throw ParameterError("gray_cycle needs n >= 1");
  if (n > 40) throw ParameterError("gray_cycle dimension too large");
  const VertexId count = VertexId{1} << n;
  std::vector<VertexId> out(count);
  for (VertexId i = 0; i < count; ++i) out[i] = i ^ (i >> 1);
  return out;
}

std::vector<Vertex> gray_cycle(int n) {
  const Box q = Box::cube(n);
  std::vector<Vertex> out;
  for (VertexId id : gray_cycle_ids(n)) out.push_back(q.decode(id));
  return out;
}

int mult_order_of_two(int l) {
  if (l < 1 || l % 2 == 0) throw ParameterError("mult_order_of_two needs odd l >= 1, got " + std::to_string(l));
  if (l == 1) return 1;
  std::uint64_t x = 2 % static_cast<std::uint64_t>(l);
  int m = 1;
  while (x != 1) {
    x = (x * 2) % static_cast<std::uint64_t>(l);
    ++m;
  }
  return m;
}

std::uint64_t odd_uncovered_count(int l, int t, int n) {
  check_lt(l, t);
  const int m = mult_order_of_two(l);
  const int r = n / m;
  const int a = n % m;
  std::uint64_t sum = 0;
  for (int s = 0; s < t; ++s) sum += binomial(r, s) * ipow((VertexId{1} << m) - 1, s);
  return (VertexId{1} << a) * sum;
}

std::uint64_t any_uncovered_count(int l, int t, int n) {
  check_lt(l, t);
  const int v = two_adic_valuation(l);
  if (v > 0 && (l >> v) == 1) return 0;
  return (VertexId{1} << (t * v)) * odd_uncovered_count(l >> v, t, n - t * v);
}

int any_min_dimension(int l, int t) {
  check_lt(l, t);
  const int v = two_adic_valuation(l);
  if (v > 0 && (l >> v) == 1) return t * v;
  return t * v + t * mult_order_of_two(l >> v);
}

PathPowerPacking pack_odd_path_power(int l, int t, int n) {
  check_lt(l, t);
  if (l % 2 == 0) throw ParameterError("pack_odd_path_power needs odd l, got " + std::to_string(l));
  const int m = mult_order_of_two(l);
  if (n < t * m)
    throw SizingError("n = " + std::to_string(n) + " too small for (P_" + std::to_string(l) + ")^" + std::to_string(t) +
                      ": minimum n is " + std::to_string(t * m));
  if (n > 40) throw SizingError("n = " + std::to_string(n) + " exceeds the supported maximum 40");

  const int r = n / m;
  const int a = n % m;
  const std::vector<VertexId> cycle = gray_cycle_ids(m);
  const int segments = static_cast<int>(((VertexId{1} << m) - 1) / static_cast<VertexId>(l));

  PathPowerPacking out{Box::cube(n), l, t, {}, {}};

  // Segment s of factor j, as a block in the host.
  auto make_block = [&](int j, int s) {
    HamOrderedBlock b;
    for (int c = 0; c < m; ++c) b.host_coords.push_back(j * m + c);
    const int shift = n - (j + 1) * m;
    for (int i = 0; i < l; ++i) b.order.push_back(cycle[static_cast<std::size_t>(1 + s * l + i)] << shift);
    return b;
  };

  // A cell picks, per factor, the leftover vertex (-1) or a segment.
  std::vector<int> cell(static_cast<std::size_t>(r), -1);
  const VertexId tail = VertexId{1} << a;
  while (true) {
    std::vector<int> seg_factors;
    for (int j = 0; j < r; ++j)
      if (cell[static_cast<std::size_t>(j)] >= 0) seg_factors.push_back(j);

    if (static_cast<int>(seg_factors.size()) >= t) {
      std::vector<HamOrderedBlock> blocks;
      for (int i = 0; i < t; ++i)
        blocks.push_back(make_block(seg_factors[static_cast<std::size_t>(i)], cell[static_cast<std::size_t>(seg_factors[static_cast<std::size_t>(i)])]));
      // Remaining segment factors are fixed to each of their l vertices.
      std::vector<VertexId> fixed{0};
      for (std::size_t i = static_cast<std::size_t>(t); i < seg_factors.size(); ++i) {
        const auto blk = make_block(seg_factors[i], cell[static_cast<std::size_t>(seg_factors[i])]);
        std::vector<VertexId> next;
        for (VertexId f : fixed)
          for (VertexId v : blk.order) next.push_back(f + v);
        fixed = std::move(next);
      }
      for (VertexId f : fixed)
        for (VertexId q = 0; q < tail; ++q) out.copies.push_back(BlockProductCopy{blocks, f + q});
    } else {
      // Cell vertices: product of per-factor vertex sets, times Q_a.
      std::vector<VertexId> verts{0};
      for (int j = 0; j < r; ++j) {
        std::vector<VertexId> choices;
        if (cell[static_cast<std::size_t>(j)] < 0)
          choices.push_back(0);  // the all-zeros start of the cycle
        else
          choices = make_block(j, cell[static_cast<std::size_t>(j)]).order;
        std::vector<VertexId> next;
        for (VertexId p : verts)
          for (VertexId c : choices) next.push_back(p + c);
        verts = std::move(next);
      }
      for (VertexId v : verts)
        for (VertexId q = 0; q < tail; ++q) out.uncovered.push_back(v + q);
    }

    int j = 0;
    for (; j < r; ++j) {
      if (++cell[static_cast<std::size_t>(j)] < segments) break;
      cell[static_cast<std::size_t>(j)] = -1;
    }
    if (j == r) break;
  }
  std::sort(out.uncovered.begin(), out.uncovered.end());
  return out;
}

PathPowerPacking pack_any_path_power(int l, int t, int n) {
  check_lt(l, t);
  if (l % 2 == 1) {
    const int need = any_min_dimension(l, t);
    if (n < need)
      throw SizingError("n = " + std::to_string(n) + " too small for (P_" + std::to_string(l) + ")^" +
                        std::to_string(t) + ": minimum n is " + std::to_string(need));
    return pack_odd_path_power(l, t, n);
  }
  const int need = any_min_dimension(l, t);
  if (n < need)
    throw SizingError("n = " + std::to_string(n) + " too small for (P_" + std::to_string(l) + ")^" +
                      std::to_string(t) + ": minimum n is " + std::to_string(need));

  // Q_n = Q_{n-t} x Q_t; block j takes the new coordinate n - t + j.
  // Powers of two bottom out in single vertices, which tile perfectly.
  PathPowerPacking inner = l == 2 ? singletons(t, n - t) : pack_any_path_power(l / 2, t, n - t);
  PathPowerPacking out{Box::cube(n), l, t, {}, {}};
  out.copies.reserve(inner.copies.size());
  for (const auto& c : inner.copies) {
    BlockProductCopy doubled;
    doubled.base = c.base << t;
    for (std::size_t j = 0; j < c.blocks.size(); ++j) {
      const auto& b = c.blocks[j];
      const int coord = n - t + static_cast<int>(j);
      const VertexId bit = coord_bit(n, coord);
      HamOrderedBlock nb;
      nb.host_coords = b.host_coords;
      nb.host_coords.push_back(coord);
      for (VertexId v : b.order) nb.order.push_back(v << t);
      for (auto it = b.order.rbegin(); it != b.order.rend(); ++it) nb.order.push_back((*it << t) | bit);
      doubled.blocks.push_back(std::move(nb));
    }
    out.copies.push_back(std::move(doubled));
  }
  const VertexId tail = VertexId{1} << t;
  out.uncovered.reserve(inner.uncovered.size() * tail);
  for (VertexId u : inner.uncovered)
    for (VertexId w = 0; w < tail; ++w) out.uncovered.push_back((u << t) | w);
  return out;
}

}  // namespace cubepack::hampath
