// SPDX-License-Identifier: Apache-2.0
#include "cubepack/antipodal.hpp"

#include <string>

#include "cubepack/error.hpp"

namespace cubepack::antipodal {

namespace {

// Every path is a translate of one geodesic: flip coordinates in `order`.
// Start vertices are the kernel of a linear labelling Q_n -> Z_2^s whose
// columns are `label`; the geodesic's prefix sums hit every label exactly once,
// so the translates tile Q_n.
struct Scheme {
  int n = 0;
  std::vector<int> order;
  std::vector<std::uint32_t> label;  // per coordinate
};

Scheme base_scheme() { return Scheme{1, {0}, {1u}}; }

Scheme doubled(const Scheme& in, int s) {
  Scheme out;
  out.n = 2 * in.n + 1;
  out.label.resize(static_cast<std::size_t>(out.n));
  for (int c = 0; c < in.n; ++c) {
    out.label[static_cast<std::size_t>(c)] = in.label[static_cast<std::size_t>(c)];
    out.label[static_cast<std::size_t>(in.n + c)] = in.label[static_cast<std::size_t>(c)];
  }
  out.label[static_cast<std::size_t>(2 * in.n)] = 1u << s;
  out.order = in.order;
  out.order.push_back(2 * in.n);
  for (int c : in.order) out.order.push_back(in.n + c);
  return out;
}

}  // namespace

PackingCertificate AntipodalDecomposition::to_certificate() const {
  PackingCertificate cert;
  cert.host = std::make_shared<const Box>(Box::cube(n));
  auto pattern = std::make_shared<const PatternGraph>(PatternGraph::full(Box({n + 1})));
  for (const auto& path : paths) cert.placements.push_back(Placement{pattern, cert.host, path, Mode::induced, {}});
  cert.canonicalize();
  return cert;
}

AntipodalDecomposition ramras_decomposition(int s) {
  if (s < 1) throw ParameterError("ramras_decomposition needs s >= 1, got " + std::to_string(s));
  if (s > 5) throw SizingError("ramras_decomposition supports s <= 5 (Q_31), got " + std::to_string(s));
  Scheme scheme = base_scheme();
  for (int level = 1; level < s; ++level) scheme = doubled(scheme, level);

  const int n = scheme.n;
  AntipodalDecomposition out{s, n, {}};
  const VertexId count = VertexId{1} << n;
  out.paths.reserve(static_cast<std::size_t>(count >> s));
  for (VertexId v = 0; v < count; ++v) {
    std::uint32_t lab = 0;
    for (int c = 0; c < n; ++c)
      if (v >> (n - 1 - c) & 1) lab ^= scheme.label[static_cast<std::size_t>(c)];
    if (lab != 0) continue;
    std::vector<VertexId> path{v};
    path.reserve(static_cast<std::size_t>(n + 1));
    VertexId cur = v;
    for (int c : scheme.order) {
      cur ^= VertexId{1} << (n - 1 - c);
      path.push_back(cur);
    }
    out.paths.push_back(std::move(path));
  }
  return out;
}

}  // namespace cubepack::antipodal
