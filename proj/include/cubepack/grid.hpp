// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cubepack {

/// Mixed-radix index of a vertex inside a Box. Coordinate 0 is the most
/// significant digit, so index order equals lexicographic coordinate order.
/// For a hypercube Q_n, coordinate i is bit (n - 1 - i).
using VertexId = std::uint64_t;

/// External vertex form: one integer per factor of the box.
struct Vertex {
  std::vector<int> coords;

  auto operator<=>(const Vertex&) const = default;
};

/// Comma separated coordinates, e.g. "1,0,2".
std::string to_string(const Vertex& v);
Vertex parse_vertex(std::string_view text);

/// Cartesian product of paths P_{len_0} x ... x P_{len_{d-1}}.
/// The hypercube Q_n is the box with n factors of length 2.
class Box {
 public:
  Box() : Box(std::vector<int>{}) {}
  explicit Box(std::vector<int> factor_lengths);

  static Box cube(int n);
  static Box power(int length, int t);

  std::span<const int> factors() const noexcept { return lengths_; }
  int dimension() const noexcept { return static_cast<int>(lengths_.size()); }
  int factor(int i) const { return lengths_.at(static_cast<std::size_t>(i)); }
  VertexId size() const noexcept { return size_; }
  VertexId stride(int i) const { return strides_.at(static_cast<std::size_t>(i)); }
  bool is_cube() const noexcept { return is_cube_; }
  bool contains(VertexId v) const noexcept { return v < size_; }

  VertexId encode(const Vertex& v) const;
  Vertex decode(VertexId id) const;
  int coordinate(VertexId id, int i) const {
    return static_cast<int>((id / strides_[static_cast<std::size_t>(i)]) %
                            static_cast<VertexId>(lengths_[static_cast<std::size_t>(i)]));
  }

  bool adjacent(VertexId u, VertexId v) const;
  int distance(VertexId u, VertexId v) const;

  bool operator==(const Box& other) const { return lengths_ == other.lengths_; }

 private:
  std::vector<int> lengths_;
  std::vector<VertexId> strides_;
  VertexId size_ = 1;
  bool is_cube_ = true;
};

std::string to_string(const Box& box);

/// Cartesian-product adjacency: exactly one coordinate differs, by one.
bool adjacent(const Box& box, const Vertex& u, const Vertex& v);
/// Graph distance, i.e. the L1 distance of the coordinate vectors.
int distance(const Box& box, const Vertex& u, const Vertex& v);

/// A finite graph given as an ordered vertex subset of an ambient box.
/// Edges are either inherited from the ambient box (the induced subgraph) or
/// given explicitly, which is how Hamilton-ordered abstract graphs are
/// represented. The pattern metric is always the ambient-box distance.
class PatternGraph {
 public:
  PatternGraph(Box ambient, std::vector<VertexId> vertices);
  PatternGraph(Box ambient, std::vector<VertexId> vertices,
               std::vector<std::pair<int, int>> edges);

  static PatternGraph from_vertices(Box ambient, std::span<const Vertex> vertices);
  /// Every vertex of `ambient`, in index order; e.g. (P_l)^t as a pattern.
  static PatternGraph full(Box ambient);

  const Box& ambient() const noexcept { return ambient_; }
  int size() const noexcept { return static_cast<int>(vertices_.size()); }
  VertexId vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  std::span<const VertexId> vertices() const noexcept { return vertices_; }
  bool has_explicit_edges() const noexcept { return explicit_; }
  bool has_edge(int i, int j) const;
  int distance(int i, int j) const { return ambient_.distance(vertex(i), vertex(j)); }
  /// Edge list as index pairs (i < j), derived or explicit.
  std::vector<std::pair<int, int>> edges() const;
  std::optional<int> index_of(VertexId v) const;

  bool operator==(const PatternGraph& other) const;

 private:
  Box ambient_;
  std::vector<VertexId> vertices_;
  bool explicit_ = false;
  std::vector<std::uint8_t> adjacency_;  // size()*size(), explicit edges only
};

/// Restriction of `pattern` to coordinate i == value, with coordinate i
/// dropped from the ambient box. Returns nullopt for an empty slice.
std::optional<PatternGraph> slice(const PatternGraph& pattern, int coordinate, int value);

enum class Mode { subgraph, induced, isometric };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// One copy of a pattern in a host box. `image[i]` is the host vertex that
/// pattern vertex i is sent to.
struct Placement {
  std::shared_ptr<const PatternGraph> pattern;
  std::shared_ptr<const Box> host;
  std::vector<VertexId> image;
  Mode mode = Mode::subgraph;
  /// Optional product structure: for each pattern factor, the host
  /// coordinates it occupies. Empty when the placement carries no structure.
  std::vector<std::vector<int>> blocks;

  /// Sorted image, the primary canonical key.
  std::vector<VertexId> sorted_image() const;
};

/// Canonical placement order: sorted image lexicographically, then map.
bool canonical_less(const Placement& a, const Placement& b);

struct ValidityReport {
  bool subgraph = false;
  bool induced = false;
  bool isometric = false;

  bool holds(Mode mode) const;
  /// Strongest of isometric, induced, subgraph that holds, if any. For
  /// derived-edge patterns the three modes are nested.
  std::optional<Mode> strongest() const;
};

/// Checks the three embedding predicates. Throws InvalidPlacement when the
/// map is the wrong length, leaves the host, or is not injective.
ValidityReport validate_placement(const Placement& p);

/// All placements generated by injecting pattern factors into host factors
/// with per-factor translation and reflection (remaining host coordinates
/// fixed to every value), filtered by `mode`. No duplicates; sorted by
/// canonical_less. A pattern that does not fit gives an empty result.
std::vector<Placement> enumerate_placements(std::shared_ptr<const PatternGraph> pattern,
                                            std::shared_ptr<const Box> host, Mode mode);

/// Streaming variant in the same order.
void for_each_placement(const std::shared_ptr<const PatternGraph>& pattern,
                        const std::shared_ptr<const Box>& host, Mode mode,
                        const std::function<void(const Placement&)>& visit);

}  // namespace cubepack
