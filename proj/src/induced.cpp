// SPDX-License-Identifier: Apache-2.0
#include "cubepack/induced.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "cubepack/antipodal.hpp"
#include "cubepack/error.hpp"

namespace cubepack::induced {

std::vector<std::vector<std::pair<int, int>>> staircase_cells(int l) {
  if (l < 2) throw ParameterError("staircase needs l >= 2, got " + std::to_string(l));
  std::vector<std::vector<std::pair<int, int>>> paths;
  for (int i = 0; i + 1 < l; ++i) {
    std::vector<std::pair<int, int>> path;
    for (int j = 0; j <= l - 2 - i; ++j) path.emplace_back(i, j);
    for (int j = l - 2 - i; j <= l - 2; ++j) path.emplace_back(i + 1, j);
    paths.push_back(std::move(path));
  }
  return paths;
}

StaircaseResult staircase_partition(const Box& block_host, const hampath::HamOrderedBlock& block) {
  const int l = block.size();
  if (l < 2) throw ParameterError("staircase needs a block with at least 2 vertices");
  if (!hampath::is_valid_block(block_host, block))
    throw ParameterError("block order is not a Hamilton path of its vertex set");
  std::vector<int> lengths(block_host.factors().begin(), block_host.factors().end());
  lengths.push_back(l - 1);
  StaircaseResult out;
  out.host = std::make_shared<const Box>(std::move(lengths));
  auto pattern = std::make_shared<const PatternGraph>(PatternGraph::full(Box({l})));
  const auto rows = static_cast<VertexId>(l - 1);
  for (const auto& cells : staircase_cells(l)) {
    std::vector<VertexId> image;
    for (const auto& [p, q] : cells) image.push_back(block.order[static_cast<std::size_t>(p)] * rows + static_cast<VertexId>(q));
    out.paths.push_back(Placement{pattern, out.host, std::move(image), Mode::induced, {}});
  }
  return out;
}

int default_m(int l) {
  if (l < 2) throw ParameterError("l must be >= 2, got " + std::to_string(l));
  const std::uint64_t target = static_cast<std::uint64_t>(l) * static_cast<std::uint64_t>(l);
  int m = 0;
  while ((std::uint64_t{1} << m) < target) ++m;
  return m;
}

InducedParams induced_params(int l, int t, std::optional<int> m_override) {
  if (l < 2) throw ParameterError("l must be >= 2, got " + std::to_string(l));
  if (t < 1) throw ParameterError("t must be >= 1, got " + std::to_string(t));
  InducedParams p;
  p.l = l;
  p.t = t;
  p.m = m_override ? *m_override : default_m(l);
  if (p.m < 1 || p.m > 5)
    throw ParameterError("m = " + std::to_string(p.m) + " outside the supported range 1..5");
  const std::int64_t pow = std::int64_t{1} << p.m;
  p.a = static_cast<int>(pow % l);
  const std::int64_t b = pow - static_cast<std::int64_t>(l - 1 - p.a) * (l - 1);
  if (b <= 0)
    throw ParameterError("m = " + std::to_string(p.m) + " gives b = " + std::to_string(b) + " <= 0 for l = " +
                         std::to_string(l));
  p.b = static_cast<int>(b);
  if ((p.b + 1) % l != 0)
    throw ParameterError("b = " + std::to_string(p.b) + " is not -1 mod l = " + std::to_string(l));
  p.cube_dim = static_cast<int>(pow - 1);
  return p;
}

int induced_min_dimension(int l, int t, std::optional<int> m_override) {
  const InducedParams p = induced_params(l, t, m_override);
  return t * p.cube_dim + hampath::any_min_dimension(p.b + 1, t);
}

double induced_bound_constant(int l, int t, std::optional<int> m_override) {
  const InducedParams p = induced_params(l, t, m_override);
  const int lb = p.b + 1;
  const int v = std::countr_zero(static_cast<unsigned>(lb));
  const int mo = hampath::mult_order_of_two(lb >> v);
  const double q = std::ldexp(1.0, mo) - 1.0;
  return std::ldexp(1.0, t * p.cube_dim + t * v + mo) * t * std::pow(q, t - 1);
}

std::uint64_t induced_uncovered_count(int l, int t, int n, std::optional<int> m_override) {
  const InducedParams p = induced_params(l, t, m_override);
  return (std::uint64_t{1} << (t * p.cube_dim)) * hampath::any_uncovered_count(p.b + 1, t, n - t * p.cube_dim);
}

namespace {

struct Subpath {
  std::vector<VertexId> verts;
  bool long_piece = false;  // the P_b piece
};

// Induced P_l's partitioning (block x subpath); all ids are host partials.
std::vector<std::vector<VertexId>> factor_paths(const std::vector<VertexId>& block, const Subpath& sub, int l) {
  std::vector<std::vector<VertexId>> out;
  if (sub.long_piece) {
    // block has b+1 vertices, sub has b: staircase to P_{b+1}, then cut.
    const int lb = static_cast<int>(block.size());
    for (const auto& cells : staircase_cells(lb)) {
      for (std::size_t start = 0; start < cells.size(); start += static_cast<std::size_t>(l)) {
        std::vector<VertexId> piece;
        for (std::size_t k = start; k < start + static_cast<std::size_t>(l); ++k)
          piece.push_back(block[static_cast<std::size_t>(cells[k].first)] + sub.verts[static_cast<std::size_t>(cells[k].second)]);
        out.push_back(std::move(piece));
      }
    }
  } else {
    // sub has l-1 vertices: cut the block order into l-vertex sub-blocks.
    for (std::size_t start = 0; start < block.size(); start += static_cast<std::size_t>(l)) {
      for (const auto& cells : staircase_cells(l)) {
        std::vector<VertexId> piece;
        for (const auto& [p, q] : cells)
          piece.push_back(block[start + static_cast<std::size_t>(p)] + sub.verts[static_cast<std::size_t>(q)]);
        out.push_back(std::move(piece));
      }
    }
  }
  return out;
}

}  // namespace

PackingCertificate InducedPacking::to_certificate() const {
  PackingCertificate cert;
  cert.host = std::make_shared<const Box>(host);
  auto pattern = std::make_shared<const PatternGraph>(PatternGraph::full(Box::power(params.l, params.t)));
  cert.placements.reserve(copies.size());
  for (std::size_t i = 0; i < copies.size(); ++i)
    cert.placements.push_back(Placement{pattern, cert.host, copies[i], Mode::induced, copy_blocks[i]});
  cert.uncovered = uncovered;
  cert.canonicalize();
  return cert;
}

InducedPacking induced_path_power_packing(int l, int t, int n, std::optional<int> m_override) {
  InducedParams p = induced_params(l, t, m_override);
  const int need = t * p.cube_dim + hampath::any_min_dimension(p.b + 1, t);
  if (n < need)
    throw SizingError("n = " + std::to_string(n) + " too small for induced (P_" + std::to_string(l) + ")^" +
                      std::to_string(t) + " with m = " + std::to_string(p.m) + ": minimum n is " + std::to_string(need));
  if (n > 30) throw SizingError("n = " + std::to_string(n) + " exceeds the supported maximum 30");
  p.base_dim = n - t * p.cube_dim;
  const int D = p.cube_dim;

  InducedPacking out{p, Box::cube(n), {}, {}, {}};

  // Subpaths of each cube factor: every antipodal path cut greedily into
  // l-1-a pieces of l-1 vertices and one final piece of b vertices.
  const auto ramras = antipodal::ramras_decomposition(p.m);
  std::vector<std::vector<Subpath>> subpaths(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) {
    const int shift = (t - 1 - i) * D;
    for (const auto& path : ramras.paths) {
      std::size_t pos = 0;
      for (int piece = 0; piece < l - 1 - p.a; ++piece) {
        Subpath sp;
        for (int k = 0; k < l - 1; ++k) sp.verts.push_back(path[pos++] << shift);
        subpaths[static_cast<std::size_t>(i)].push_back(std::move(sp));
      }
      Subpath last;
      last.long_piece = true;
      for (int k = 0; k < p.b; ++k) last.verts.push_back(path[pos++] << shift);
      subpaths[static_cast<std::size_t>(i)].push_back(std::move(last));
    }
  }

  const auto base = hampath::pack_any_path_power(p.b + 1, t, p.base_dim);
  const int base_shift = t * D;

  for (const auto& copy : base.copies) {
    std::vector<std::vector<VertexId>> blocks;
    std::vector<std::vector<int>> coords;
    for (int i = 0; i < t; ++i) {
      const auto& blk = copy.blocks[static_cast<std::size_t>(i)];
      std::vector<VertexId> shifted;
      for (VertexId v : blk.order) shifted.push_back(v << base_shift);
      blocks.push_back(std::move(shifted));
      std::vector<int> c = blk.host_coords;
      for (int k = 0; k < D; ++k) c.push_back(p.base_dim + i * D + k);
      std::sort(c.begin(), c.end());
      coords.push_back(std::move(c));
    }
    const VertexId fixed = copy.base << base_shift;

    // Every combination of one subpath per factor.
    std::vector<std::size_t> choice(static_cast<std::size_t>(t), 0);
    while (true) {
      std::vector<std::vector<std::vector<VertexId>>> per_factor;
      for (int i = 0; i < t; ++i)
        per_factor.push_back(factor_paths(blocks[static_cast<std::size_t>(i)],
                                          subpaths[static_cast<std::size_t>(i)][choice[static_cast<std::size_t>(i)]], l));
      // Every combination of one induced P_l per factor.
      std::vector<std::size_t> pick(static_cast<std::size_t>(t), 0);
      while (true) {
        std::vector<VertexId> verts{fixed};
        for (int i = 0; i < t; ++i) {
          const auto& path = per_factor[static_cast<std::size_t>(i)][pick[static_cast<std::size_t>(i)]];
          std::vector<VertexId> next;
          next.reserve(verts.size() * path.size());
          for (VertexId pre : verts)
            for (VertexId v : path) next.push_back(pre + v);
          verts = std::move(next);
        }
        out.copies.push_back(std::move(verts));
        out.copy_blocks.push_back(coords);
        int i = t - 1;
        for (; i >= 0; --i) {
          auto& k = pick[static_cast<std::size_t>(i)];
          if (++k < per_factor[static_cast<std::size_t>(i)].size()) break;
          k = 0;
        }
        if (i < 0) break;
      }
      int i = t - 1;
      for (; i >= 0; --i) {
        auto& k = choice[static_cast<std::size_t>(i)];
        if (++k < subpaths[static_cast<std::size_t>(i)].size()) break;
        k = 0;
      }
      if (i < 0) break;
    }
  }

  const VertexId tail = VertexId{1} << base_shift;
  out.uncovered.reserve(base.uncovered.size() * tail);
  for (VertexId u : base.uncovered)
    for (VertexId w = 0; w < tail; ++w) out.uncovered.push_back((u << base_shift) | w);
  return out;
}

}  // namespace cubepack::induced
