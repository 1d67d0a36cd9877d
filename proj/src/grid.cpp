// SPDX-License-Identifier: Apache-2.0
#include "cubepack/grid.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <set>

#include "cubepack/error.hpp"

namespace cubepack {

std::string to_string(const Vertex& v) {
  std::string out;
  for (std::size_t i = 0; i < v.coords.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v.coords[i]);
  }
  return out;
}

Vertex parse_vertex(std::string_view text) {
  Vertex v;
  if (text.empty()) return v;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view part = text.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
    int value = 0;
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc{} || end != part.data() + part.size() || part.empty())
      throw InvalidVertex("bad vertex text '" + std::string(text) + "'");
    v.coords.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return v;
}

Box::Box(std::vector<int> factor_lengths) : lengths_(std::move(factor_lengths)) {
  strides_.assign(lengths_.size(), 1);
  constexpr VertexId kLimit = VertexId{1} << 62;
  size_ = 1;
  for (std::size_t k = lengths_.size(); k-- > 0;) {
    const int len = lengths_[k];
    if (len < 1) throw ParameterError("box factor length must be >= 1, got " + std::to_string(len));
    strides_[k] = size_;
    if (size_ > kLimit / static_cast<VertexId>(len))
      throw ParameterError("box " + to_string(*this) + " has too many vertices");
    size_ *= static_cast<VertexId>(len);
    if (len != 2) is_cube_ = false;
  }
}

Box Box::cube(int n) {
  if (n < 0) throw ParameterError("cube dimension must be >= 0");
  return Box(std::vector<int>(static_cast<std::size_t>(n), 2));
}

Box Box::power(int length, int t) {
  if (t < 0) throw ParameterError("power exponent must be >= 0");
  return Box(std::vector<int>(static_cast<std::size_t>(t), length));
}

VertexId Box::encode(const Vertex& v) const {
  if (v.coords.size() != lengths_.size())
    throw InvalidVertex("vertex " + to_string(v) + " has dimension " + std::to_string(v.coords.size()) +
                        ", box has " + std::to_string(lengths_.size()));
  VertexId id = 0;
  for (std::size_t i = 0; i < lengths_.size(); ++i) {
    const int c = v.coords[i];
    if (c < 0 || c >= lengths_[i])
      throw InvalidVertex("vertex " + to_string(v) + " out of range for box " + to_string(*this));
    id += static_cast<VertexId>(c) * strides_[i];
  }
  return id;
}

Vertex Box::decode(VertexId id) const {
  if (!contains(id)) throw InvalidVertex("vertex index " + std::to_string(id) + " out of range");
  Vertex v;
  v.coords.resize(lengths_.size());
  for (std::size_t i = 0; i < lengths_.size(); ++i)
    v.coords[i] = static_cast<int>((id / strides_[i]) % static_cast<VertexId>(lengths_[i]));
  return v;
}

bool Box::adjacent(VertexId u, VertexId v) const {
  if (is_cube_) return std::popcount(u ^ v) == 1;
  return distance(u, v) == 1;
}

int Box::distance(VertexId u, VertexId v) const {
  if (is_cube_) return std::popcount(u ^ v);
  int total = 0;
  for (std::size_t i = 0; i < lengths_.size(); ++i) {
    const auto len = static_cast<VertexId>(lengths_[i]);
    const auto a = static_cast<int>((u / strides_[i]) % len);
    const auto b = static_cast<int>((v / strides_[i]) % len);
    total += std::abs(a - b);
  }
  return total;
}

std::string to_string(const Box& box) {
  std::string out;
  for (int i = 0; i < box.dimension(); ++i) {
    if (i) out += ',';
    out += std::to_string(box.factor(i));
  }
  return out;
}

bool adjacent(const Box& box, const Vertex& u, const Vertex& v) {
  return box.adjacent(box.encode(u), box.encode(v));
}

int distance(const Box& box, const Vertex& u, const Vertex& v) {
  return box.distance(box.encode(u), box.encode(v));
}

namespace {

void check_vertex_list(const Box& ambient, std::span<const VertexId> vertices) {
  if (vertices.empty()) throw ParameterError("pattern must be non-empty");
  std::vector<VertexId> sorted(vertices.begin(), vertices.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParameterError("pattern vertices must be distinct");
  if (!ambient.contains(sorted.back())) throw InvalidVertex("pattern vertex outside its ambient box");
}

}  // namespace

PatternGraph::PatternGraph(Box ambient, std::vector<VertexId> vertices)
    : ambient_(std::move(ambient)), vertices_(std::move(vertices)) {
  check_vertex_list(ambient_, vertices_);
}

PatternGraph::PatternGraph(Box ambient, std::vector<VertexId> vertices,
                           std::vector<std::pair<int, int>> edges)
    : ambient_(std::move(ambient)), vertices_(std::move(vertices)), explicit_(true) {
  check_vertex_list(ambient_, vertices_);
  const auto n = vertices_.size();
  adjacency_.assign(n * n, 0);
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n || a == b)
      throw ParameterError("explicit edge (" + std::to_string(a) + "," + std::to_string(b) + ") is invalid");
    adjacency_[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] = 1;
    adjacency_[static_cast<std::size_t>(b) * n + static_cast<std::size_t>(a)] = 1;
  }
}

PatternGraph PatternGraph::from_vertices(Box ambient, std::span<const Vertex> vertices) {
  std::vector<VertexId> ids;
  ids.reserve(vertices.size());
  for (const auto& v : vertices) ids.push_back(ambient.encode(v));
  return PatternGraph(std::move(ambient), std::move(ids));
}

PatternGraph PatternGraph::full(Box ambient) {
  std::vector<VertexId> ids(ambient.size());
  for (VertexId v = 0; v < ambient.size(); ++v) ids[v] = v;
  return PatternGraph(std::move(ambient), std::move(ids));
}

bool PatternGraph::has_edge(int i, int j) const {
  if (explicit_)
    return adjacency_[static_cast<std::size_t>(i) * vertices_.size() + static_cast<std::size_t>(j)] != 0;
  return ambient_.adjacent(vertex(i), vertex(j));
}

std::vector<std::pair<int, int>> PatternGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      if (has_edge(i, j)) out.emplace_back(i, j);
  return out;
}

std::optional<int> PatternGraph::index_of(VertexId v) const {
  const auto it = std::find(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end()) return std::nullopt;
  return static_cast<int>(it - vertices_.begin());
}

bool PatternGraph::operator==(const PatternGraph& other) const {
  if (!(ambient_ == other.ambient_) || vertices_ != other.vertices_ || explicit_ != other.explicit_) return false;
  return !explicit_ || adjacency_ == other.adjacency_;
}

std::optional<PatternGraph> slice(const PatternGraph& pattern, int coordinate, int value) {
  const Box& amb = pattern.ambient();
  if (coordinate < 0 || coordinate >= amb.dimension())
    throw ParameterError("slice coordinate " + std::to_string(coordinate) + " out of range");
  std::vector<int> lengths(amb.factors().begin(), amb.factors().end());
  lengths.erase(lengths.begin() + coordinate);
  Box reduced(std::move(lengths));

  std::vector<int> kept;  // indices into pattern
  std::vector<VertexId> ids;
  for (int i = 0; i < pattern.size(); ++i) {
    const VertexId v = pattern.vertex(i);
    if (amb.coordinate(v, coordinate) != value) continue;
    // Drop digit `coordinate`.
    const VertexId high = v / (amb.stride(coordinate) * static_cast<VertexId>(amb.factor(coordinate)));
    const VertexId low = v % amb.stride(coordinate);
    ids.push_back(high * amb.stride(coordinate) + low);
    kept.push_back(i);
  }
  if (ids.empty()) return std::nullopt;
  if (!pattern.has_explicit_edges()) return PatternGraph(std::move(reduced), std::move(ids));
  std::vector<std::pair<int, int>> edges;
  for (std::size_t a = 0; a < kept.size(); ++a)
    for (std::size_t b = a + 1; b < kept.size(); ++b)
      if (pattern.has_edge(kept[a], kept[b])) edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
  return PatternGraph(std::move(reduced), std::move(ids), std::move(edges));
}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::subgraph: return "subgraph";
    case Mode::induced: return "induced";
    case Mode::isometric: return "isometric";
  }
  return "?";
}

Mode parse_mode(std::string_view text) {
  if (text == "subgraph") return Mode::subgraph;
  if (text == "induced") return Mode::induced;
  if (text == "isometric") return Mode::isometric;
  throw ParameterError("unknown mode '" + std::string(text) + "'");
}

std::vector<VertexId> Placement::sorted_image() const {
  std::vector<VertexId> s = image;
  std::sort(s.begin(), s.end());
  return s;
}

bool canonical_less(const Placement& a, const Placement& b) {
  const auto sa = a.sorted_image();
  const auto sb = b.sorted_image();
  if (sa != sb) return sa < sb;
  return a.image < b.image;
}

bool ValidityReport::holds(Mode mode) const {
  switch (mode) {
    case Mode::subgraph: return subgraph;
    case Mode::induced: return induced;
    case Mode::isometric: return isometric;
  }
  return false;
}

std::optional<Mode> ValidityReport::strongest() const {
  if (isometric && induced) return Mode::isometric;
  if (induced) return Mode::induced;
  if (isometric) return Mode::isometric;
  if (subgraph) return Mode::subgraph;
  return std::nullopt;
}

ValidityReport validate_placement(const Placement& p) {
  if (!p.pattern || !p.host) throw InvalidPlacement("placement lacks pattern or host");
  const PatternGraph& pat = *p.pattern;
  const Box& host = *p.host;
  if (p.image.size() != static_cast<std::size_t>(pat.size()))
    throw InvalidPlacement("map has " + std::to_string(p.image.size()) + " entries, pattern has " +
                           std::to_string(pat.size()));
  for (VertexId v : p.image)
    if (!host.contains(v)) throw InvalidPlacement("map sends a vertex outside the host");
  {
    std::vector<VertexId> s = p.sorted_image();
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw InvalidPlacement("map is not injective (vertex " + to_string(host.decode(*std::adjacent_find(s.begin(), s.end()))) + " repeated)");
  }
  ValidityReport r{true, true, true};
  const int n = pat.size();
  for (int i = 0; i < n && (r.subgraph || r.induced || r.isometric); ++i) {
    for (int j = i + 1; j < n; ++j) {
      const VertexId a = p.image[static_cast<std::size_t>(i)];
      const VertexId b = p.image[static_cast<std::size_t>(j)];
      const bool pe = pat.has_edge(i, j);
      const int hd = host.distance(a, b);
      const bool he = hd == 1;
      if (pe && !he) r.subgraph = false;
      if (pe != he) r.induced = false;
      if (r.isometric && hd != pat.distance(i, j)) r.isometric = false;
    }
  }
  if (!r.subgraph) r.induced = false;
  return r;
}

std::vector<Placement> enumerate_placements(std::shared_ptr<const PatternGraph> pattern,
                                            std::shared_ptr<const Box> host, Mode mode) {
  const Box& amb = pattern->ambient();
  const int k = amb.dimension();
  const int n = host->dimension();
  std::vector<Placement> out;
  if (k > n) return out;

  // Two placements with the same map are the same placement.
  std::set<std::vector<VertexId>> seen;

  // Pattern vertex coordinates, decoded once.
  std::vector<Vertex> pverts;
  pverts.reserve(static_cast<std::size_t>(pattern->size()));
  for (VertexId v : pattern->vertices()) pverts.push_back(amb.decode(v));

  std::vector<int> target(static_cast<std::size_t>(k), -1);
  std::vector<char> used(static_cast<std::size_t>(n), 0);

  std::vector<int> reflect(static_cast<std::size_t>(k), 0);
  std::vector<int> offset(static_cast<std::size_t>(k), 0);

  auto emit_with_free = [&](const std::vector<int>& free_coords) {
    // Enumerate every assignment of values to the host coordinates not hit.
    std::vector<int> free_vals(free_coords.size(), 0);
    while (true) {
      VertexId base = 0;
      for (std::size_t f = 0; f < free_coords.size(); ++f)
        base += static_cast<VertexId>(free_vals[f]) * host->stride(free_coords[f]);
      std::vector<VertexId> image;
      image.reserve(pverts.size());
      for (const auto& pv : pverts) {
        VertexId id = base;
        for (int i = 0; i < k; ++i) {
          const int x = pv.coords[static_cast<std::size_t>(i)];
          const int len = amb.factor(i);
          const int y = offset[static_cast<std::size_t>(i)] + (reflect[static_cast<std::size_t>(i)] ? len - 1 - x : x);
          id += static_cast<VertexId>(y) * host->stride(target[static_cast<std::size_t>(i)]);
        }
        image.push_back(id);
      }
      if (!seen.contains(image)) {
        seen.insert(image);
        Placement p{pattern, host, std::move(image), mode, {}};
        if (validate_placement(p).holds(mode)) out.push_back(std::move(p));
      }
      std::size_t f = 0;
      for (; f < free_coords.size(); ++f) {
        if (++free_vals[f] < host->factor(free_coords[f])) break;
        free_vals[f] = 0;
      }
      if (f == free_coords.size()) break;
    }
  };

  // Recursive choice of target coordinate, reflection and offset per pattern factor.
  std::function<void(int)> choose = [&](int i) {
    if (i == k) {
      std::vector<int> free_coords;
      for (int c = 0; c < n; ++c)
        if (!used[static_cast<std::size_t>(c)]) free_coords.push_back(c);
      emit_with_free(free_coords);
      return;
    }
    const int len = amb.factor(i);
    for (int c = 0; c < n; ++c) {
      if (used[static_cast<std::size_t>(c)] || host->factor(c) < len) continue;
      used[static_cast<std::size_t>(c)] = 1;
      target[static_cast<std::size_t>(i)] = c;
      for (int refl = 0; refl < (len > 1 ? 2 : 1); ++refl) {
        reflect[static_cast<std::size_t>(i)] = refl;
        for (int off = 0; off + len <= host->factor(c); ++off) {
          offset[static_cast<std::size_t>(i)] = off;
          choose(i + 1);
        }
      }
      used[static_cast<std::size_t>(c)] = 0;
    }
  };
  choose(0);

  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

void for_each_placement(const std::shared_ptr<const PatternGraph>& pattern,
                        const std::shared_ptr<const Box>& host, Mode mode,
                        const std::function<void(const Placement&)>& visit) {
  for (const auto& p : enumerate_placements(pattern, host, mode)) visit(p);
}

}  // namespace cubepack
