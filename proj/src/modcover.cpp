// SPDX-License-Identifier: Apache-2.0
#include "cubepack/modcover.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "cubepack/error.hpp"
#include "cubepack/modsolve.hpp"

namespace cubepack::modcover {

namespace {

void require_cube_pattern(const PatternGraph& h, const char* who) {
  if (!h.ambient().is_cube())
    throw ParameterError(std::string(who) + " needs a pattern inside a hypercube, got ambient " + to_string(h.ambient()));
}

Mode copy_mode(const PatternGraph& h) { return h.has_explicit_edges() ? Mode::isometric : Mode::induced; }

// Per-coordinate affine isometry x -> base + dir * x of {0,1} into P_L.
struct Axis {
  int base = 0;
  int dir = 1;
  auto operator<=>(const Axis&) const = default;
};
using Iso = std::vector<Axis>;
using Weighted = std::vector<std::pair<Iso, std::uint32_t>>;

struct Unsolved {};

// Axis that sends bit c to y and keeps the other bit inside [0, L).
Axis pin(int c, int y, int L) {
  if (c == 0) return y + 1 < L ? Axis{y, 1} : Axis{y, -1};
  return y >= 1 ? Axis{y - 1, 1} : Axis{y + 1, -1};
}

// Image in (P_L)^k of a Q_k vertex id.
VertexId apply(const Iso& f, VertexId v, int L) {
  const int k = static_cast<int>(f.size());
  VertexId out = 0;
  for (int i = 0; i < k; ++i) {
    const int bit = static_cast<int>(v >> (k - 1 - i) & 1);
    out = out * static_cast<VertexId>(L) + static_cast<VertexId>(f[static_cast<std::size_t>(i)].base + f[static_cast<std::size_t>(i)].dir * bit);
  }
  return out;
}

void accumulate(Weighted& into, Iso f, std::uint32_t mult, std::uint32_t r) {
  mult %= r;
  if (mult != 0 || r == 1) into.emplace_back(std::move(f), r == 1 ? 1 : mult);
}

// Cover of (P_L)^k by isometric copies of h with coverage == 1 (mod r).
Weighted cover_rec(const PatternGraph& h, int L, std::uint32_t r, std::uint64_t budget) {
  const int k = h.ambient().dimension();
  if (k == 0) return {{Iso{}, 1}};
  const auto lower = slice(h, k - 1, 0);
  const auto upper = slice(h, k - 1, 1);

  Weighted out;
  if (!lower || !upper) {
    // h lives in one layer: cover Q_{k-1}-sized problem, repeat on every layer.
    const int c = lower ? 0 : 1;
    const Weighted sub = cover_rec(lower ? *lower : *upper, L, r, budget);
    for (int y = 0; y < L; ++y)
      for (const auto& [f, mu] : sub) {
        Iso g = f;
        g.push_back(pin(c, y, L));
        accumulate(out, std::move(g), mu, r);
      }
    return out;
  }
  if (k == 1) {
    // The edge: a perfect matching of P_L.
    for (int j = 0; j + 1 < L; j += 2) out.emplace_back(Iso{Axis{j, 1}}, 1);
    return out;
  }

  const Weighted sub = cover_rec(*lower, L, r, budget);
  const Box layer = Box::power(L, k - 1);
  std::vector<std::uint64_t> c_minus(layer.size(), 0), c_plus(layer.size(), 0);
  for (const auto& [f, mu] : sub) {
    for (VertexId v : lower->vertices()) c_minus[apply(f, v, L)] += mu;
    for (VertexId v : upper->vertices()) c_plus[apply(f, v, L)] += mu;
  }
  std::set<std::pair<std::uint32_t, std::uint32_t>> profiles;
  for (VertexId x = 0; x < layer.size(); ++x)
    profiles.emplace(static_cast<std::uint32_t>(c_minus[x] % r), static_cast<std::uint32_t>(c_plus[x] % r));

  // Unknowns: beta_p (last axis p + x, p = 0..L-2) then gamma_p (p - x, p = 1..L-1).
  const std::size_t nvar = static_cast<std::size_t>(2 * L - 2);
  auto beta = [](int p) { return static_cast<std::size_t>(p); };
  auto gamma = [L](int p) { return static_cast<std::size_t>(L - 1 + p - 1); };
  modsolve::Matrix a;
  std::vector<std::uint32_t> b;
  for (int q = 0; q < L; ++q)
    for (auto [cm, cp] : profiles) {
      std::vector<std::uint32_t> row(nvar, 0);
      if (q <= L - 2) row[beta(q)] = (row[beta(q)] + cm) % r;
      if (q >= 1) row[gamma(q)] = (row[gamma(q)] + cm) % r;
      if (q - 1 >= 0) row[beta(q - 1)] = (row[beta(q - 1)] + cp) % r;
      if (q + 1 <= L - 1) row[gamma(q + 1)] = (row[gamma(q + 1)] + cp) % r;
      a.push_back(std::move(row));
      b.push_back(1 % r);
    }
  const auto w = modsolve::solve_mod(a, b, r, budget);
  if (!w) throw Unsolved{};

  for (const auto& [f, mu] : sub) {
    for (int p = 0; p <= L - 2; ++p) {
      const std::uint32_t x = (*w)[beta(p)];
      if (x == 0) continue;
      Iso g = f;
      g.push_back(Axis{p, 1});
      accumulate(out, std::move(g), static_cast<std::uint32_t>(std::uint64_t{mu} * x % r), r);
    }
    for (int p = 1; p <= L - 1; ++p) {
      const std::uint32_t x = (*w)[gamma(p)];
      if (x == 0) continue;
      Iso g = f;
      g.push_back(Axis{p, -1});
      accumulate(out, std::move(g), static_cast<std::uint32_t>(std::uint64_t{mu} * x % r), r);
    }
  }
  return out;
}

}  // namespace

MultisetCover shift_l_partition(const PatternGraph& h, int n) {
  require_cube_pattern(h, "shift_l_partition");
  const int k = h.ambient().dimension();
  if (n < k) throw SizingError("n = " + std::to_string(n) + " is below the pattern dimension: minimum n is " + std::to_string(k));
  if (n > 24) throw SizingError("n = " + std::to_string(n) + " exceeds the supported maximum 24");
  MultisetCover cover;
  cover.host = std::make_shared<const Box>(Box::cube(n));
  cover.modulus = static_cast<std::uint32_t>(h.size());
  cover.residue = 0;
  auto pattern = std::make_shared<const PatternGraph>(h);
  const Mode mode = copy_mode(h);
  const VertexId count = cover.host->size();
  cover.entries.reserve(count);
  for (VertexId u = 0; u < count; ++u) {
    std::vector<VertexId> image;
    image.reserve(static_cast<std::size_t>(h.size()));
    for (VertexId v : h.vertices()) image.push_back((v << (n - k)) ^ u);
    cover.entries.push_back(CoverEntry{Placement{pattern, cover.host, std::move(image), mode, {}}, 1});
  }
  cover.canonicalize();
  return cover;
}

MultisetCover lift_to_path_power(const MultisetCover& cover, int l) {
  if (!cover.host || !cover.host->is_cube()) throw ParameterError("lift_to_path_power needs a cover of a hypercube");
  if (l < 1) throw ParameterError("l must be >= 1, got " + std::to_string(l));
  const int n = cover.host->dimension();
  MultisetCover out;
  out.host = std::make_shared<const Box>(Box::power(2 * l, n));
  out.modulus = cover.modulus;
  out.residue = cover.residue;

  std::vector<int> j(static_cast<std::size_t>(n), 0);
  while (true) {
    for (const auto& e : cover.entries) {
      Placement p = e.placement;
      p.host = out.host;
      for (auto& v : p.image) {
        VertexId id = 0;
        for (int i = 0; i < n; ++i) {
          const int bit = static_cast<int>(v >> (n - 1 - i) & 1);
          id = id * static_cast<VertexId>(2 * l) + static_cast<VertexId>(2 * j[static_cast<std::size_t>(i)] + bit);
        }
        v = id;
      }
      out.entries.push_back(CoverEntry{std::move(p), e.multiplicity});
    }
    int i = n - 1;
    for (; i >= 0; --i) {
      if (++j[static_cast<std::size_t>(i)] < l) break;
      j[static_cast<std::size_t>(i)] = 0;
    }
    if (i < 0) break;
  }
  out.canonicalize();
  return out;
}

MultisetCover one_mod_l_partition(const PatternGraph& h, std::uint64_t budget) {
  require_cube_pattern(h, "one_mod_l_partition");
  const int k = h.ambient().dimension();
  const auto l = static_cast<std::uint32_t>(h.size());
  const int L = 2 * static_cast<int>(l);
  auto host = std::make_shared<const Box>(Box::power(L, k));
  auto pattern = std::make_shared<const PatternGraph>(h);

  Weighted cover;
  try {
    cover = cover_rec(h, L, l, budget);
  } catch (const Unsolved&) {
    auto gens = enumerate_placements(pattern, host, Mode::isometric);
    auto solved = congruence_cover_solve(host, gens, l, 1 % l, budget);
    if (!solved) throw Error("no (1 mod " + std::to_string(l) + ")-partition found among isometric copies");
    return *solved;
  }

  MultisetCover out;
  out.host = host;
  out.modulus = l;
  out.residue = 1 % l;
  out.entries.reserve(cover.size());
  for (const auto& [f, mu] : cover) {
    std::vector<VertexId> image;
    image.reserve(static_cast<std::size_t>(h.size()));
    for (VertexId v : h.vertices()) image.push_back(apply(f, v, L));
    out.entries.push_back(CoverEntry{Placement{pattern, host, std::move(image), Mode::isometric, {}}, mu});
  }
  out.canonicalize();
  return out;
}

std::optional<MultisetCover> congruence_cover_solve(std::shared_ptr<const Box> host,
                                                    const std::vector<Placement>& generators, std::uint32_t l,
                                                    std::uint32_t r, std::uint64_t budget) {
  if (!host) throw ParameterError("congruence_cover_solve needs a host");
  if (l < 1) throw ParameterError("l must be >= 1");
  if (r >= l && l > 1) throw ParameterError("residue must be below the modulus");
  for (const auto& g : generators) {
    if (!g.host || !(*g.host == *host)) throw ParameterError("generator host differs from the target host");
    if (!validate_placement(g).holds(g.mode)) throw InvalidPlacement("generator fails its declared mode");
  }

  // One column per distinct vertex set.
  std::map<std::vector<VertexId>, std::size_t> seen;
  std::vector<std::size_t> columns;
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (seen.emplace(generators[i].sorted_image(), i).second) columns.push_back(i);

  const std::size_t rows = static_cast<std::size_t>(host->size());
  if (static_cast<std::uint64_t>(rows) * std::max<std::uint64_t>(columns.size(), 1) > budget)
    throw BudgetExceeded("congruence system " + std::to_string(rows) + " x " + std::to_string(columns.size()) +
                         " exceeds budget " + std::to_string(budget));
  modsolve::Matrix a(rows, std::vector<std::uint32_t>(columns.size(), 0));
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (VertexId v : generators[columns[c]].image) a[static_cast<std::size_t>(v)][c] = 1 % l;
  const std::vector<std::uint32_t> b(rows, r % l);
  const auto x = modsolve::solve_mod(a, b, l, budget);
  if (!x) return std::nullopt;

  MultisetCover out;
  out.host = std::move(host);
  out.modulus = l;
  out.residue = r % l;
  for (std::size_t c = 0; c < columns.size(); ++c)
    if ((*x)[c] != 0) out.entries.push_back(CoverEntry{generators[columns[c]], (*x)[c]});
  out.canonicalize();
  return out;
}

}  // namespace cubepack::modcover
