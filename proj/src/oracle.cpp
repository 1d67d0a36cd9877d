// SPDX-License-Identifier: Apache-2.0
#include "cubepack/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "cubepack/error.hpp"
#include "cubepack/hampath.hpp"

namespace cubepack::oracle {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::sat: return "SAT";
    case Status::unsat: return "UNSAT";
    case Status::budget_exceeded: return "BUDGET_EXCEEDED";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

class Meter {
 public:
  explicit Meter(Budget b) : budget_(b), start_(Clock::now()) {}
  // False once the node or time budget is spent.
  bool tick() {
    ++nodes_;
    if (nodes_ > budget_.nodes) return false;
    if (budget_.seconds > 0 && (nodes_ & 0xfff) == 0) {
      const std::chrono::duration<double> dt = Clock::now() - start_;
      if (dt.count() > budget_.seconds) return false;
    }
    return true;
  }
  std::uint64_t nodes() const { return nodes_; }

 private:
  Budget budget_;
  Clock::time_point start_;
  std::uint64_t nodes_ = 0;
};

// Knuth's dancing links. Column c (1-based) is host vertex c - 1.
class Dlx {
 public:
  Dlx(int columns, const std::vector<std::vector<VertexId>>& rows) {
    const int nodes = columns + 1;
    for (int i = 0; i < nodes; ++i) {
      L_.push_back(i - 1);
      R_.push_back(i + 1);
      U_.push_back(i);
      D_.push_back(i);
      C_.push_back(i);
      row_.push_back(-1);
    }
    L_[0] = columns;
    R_[static_cast<std::size_t>(columns)] = 0;
    size_.assign(static_cast<std::size_t>(nodes), 0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      int first = -1;
      for (VertexId v : rows[r]) {
        const int c = static_cast<int>(v) + 1;
        const int x = static_cast<int>(L_.size());
        C_.push_back(c);
        row_.push_back(static_cast<int>(r));
        U_.push_back(U_[static_cast<std::size_t>(c)]);
        D_.push_back(c);
        D_[static_cast<std::size_t>(U_[static_cast<std::size_t>(c)])] = x;
        U_[static_cast<std::size_t>(c)] = x;
        ++size_[static_cast<std::size_t>(c)];
        if (first < 0) {
          L_.push_back(x);
          R_.push_back(x);
          first = x;
        } else {
          L_.push_back(L_[static_cast<std::size_t>(first)]);
          R_.push_back(first);
          R_[static_cast<std::size_t>(L_[static_cast<std::size_t>(first)])] = x;
          L_[static_cast<std::size_t>(first)] = x;
        }
      }
    }
  }

  void cover(int c) {
    auto& l = L_;
    auto& r = R_;
    r[at(l[at(c)])] = r[at(c)];
    l[at(r[at(c)])] = l[at(c)];
    for (int i = D_[at(c)]; i != c; i = D_[at(i)])
      for (int j = R_[at(i)]; j != i; j = R_[at(j)]) {
        D_[at(U_[at(j)])] = D_[at(j)];
        U_[at(D_[at(j)])] = U_[at(j)];
        --size_[at(C_[at(j)])];
      }
  }

  void uncover(int c) {
    for (int i = U_[at(c)]; i != c; i = U_[at(i)])
      for (int j = L_[at(i)]; j != i; j = L_[at(j)]) {
        ++size_[at(C_[at(j)])];
        D_[at(U_[at(j)])] = j;
        U_[at(D_[at(j)])] = j;
      }
    R_[at(L_[at(c)])] = c;
    L_[at(R_[at(c)])] = c;
  }

  // Selects the row of node x: covers every other column the row touches.
  void take(int x) {
    for (int j = R_[at(x)]; j != x; j = R_[at(j)]) cover(C_[at(j)]);
  }
  void untake(int x) {
    for (int j = L_[at(x)]; j != x; j = L_[at(j)]) uncover(C_[at(j)]);
  }

  // 1 = solved, 0 = exhausted, -1 = out of budget.
  int search(Meter& meter, std::vector<int>& chosen) {
    if (R_[0] == 0) return 1;
    int best = -1;
    int best_size = 0;
    for (int c = R_[0]; c != 0; c = R_[at(c)])
      if (best < 0 || size_[at(c)] < best_size) {
        best = c;
        best_size = size_[at(c)];
        if (best_size == 0) return 0;
      }
    cover(best);
    for (int x = D_[at(best)]; x != best; x = D_[at(x)]) {
      if (!meter.tick()) {
        uncover(best);
        return -1;
      }
      chosen.push_back(row_[at(x)]);
      take(x);
      const int res = search(meter, chosen);
      untake(x);
      if (res != 0) {
        if (res == -1) chosen.pop_back();
        uncover(best);
        return res;
      }
      chosen.pop_back();
    }
    uncover(best);
    return 0;
  }

  int down(int c) const { return D_[at(c)]; }
  int row(int x) const { return row_[at(x)]; }

 private:
  static std::size_t at(int i) { return static_cast<std::size_t>(i); }
  std::vector<int> L_, R_, U_, D_, C_, row_, size_;
};

// Coordinate permutations of `host` that preserve factor lengths; empty if
// there are more than `cap`.
std::vector<std::vector<int>> length_preserving_perms(const Box& host, std::size_t cap) {
  const int d = host.dimension();
  std::vector<std::vector<int>> classes;
  {
    std::vector<int> lens(host.factors().begin(), host.factors().end());
    std::vector<int> distinct = lens;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int len : distinct) {
      std::vector<int> cls;
      for (int i = 0; i < d; ++i)
        if (lens[static_cast<std::size_t>(i)] == len) cls.push_back(i);
      classes.push_back(std::move(cls));
    }
  }
  double group = 1;
  for (const auto& cls : classes)
    for (std::size_t i = 2; i <= cls.size(); ++i) group *= static_cast<double>(i);
  if (group > static_cast<double>(cap)) return {};

  std::vector<std::vector<int>> out;
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t ci) {
    if (ci == classes.size()) {
      out.push_back(perm);
      return;
    }
    std::vector<int> targets = classes[ci];
    do {
      for (std::size_t i = 0; i < targets.size(); ++i) perm[static_cast<std::size_t>(classes[ci][i])] = targets[i];
      rec(ci + 1);
    } while (std::next_permutation(targets.begin(), targets.end()));
  };
  rec(0);
  return out;
}

VertexId permute(const Box& host, VertexId v, const std::vector<int>& perm) {
  VertexId out = 0;
  for (int i = 0; i < host.dimension(); ++i)
    out += static_cast<VertexId>(host.coordinate(v, i)) * host.stride(perm[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace

CoverResult exact_cover_search(std::shared_ptr<const Box> host, std::shared_ptr<const PatternGraph> pattern, Mode mode,
                               Budget budget, std::uint64_t seed) {
  if (!host || !pattern) throw ParameterError("exact_cover_search needs a host and a pattern");
  CoverResult result;
  const VertexId n = host->size();
  const auto psize = static_cast<VertexId>(pattern->size());
  if (n % psize != 0) return result;
  if (n > (VertexId{1} << 24)) throw SizingError("host too large for exact cover search");

  // One row per distinct vertex set.
  // Every embedding, not only the factor-preserving ones.
  std::vector<Placement> placements;
  for (auto& map : enumerate_subgraph_copies(*pattern, *host)) {
    Placement p{pattern, host, std::move(map), mode, {}};
    if (validate_placement(p).holds(mode)) placements.push_back(std::move(p));
  }
  std::vector<std::vector<VertexId>> rows;
  std::vector<std::size_t> row_source;
  {
    std::set<std::vector<VertexId>> seen;
    for (std::size_t i = 0; i < placements.size(); ++i) {
      auto key = placements[i].sorted_image();
      if (seen.insert(key).second) {
        rows.push_back(std::move(key));
        row_source.push_back(i);
      }
    }
  }
  if (seed != 0) {
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::vector<VertexId>> r2;
    std::vector<std::size_t> s2;
    for (std::size_t i : order) {
      r2.push_back(std::move(rows[i]));
      s2.push_back(row_source[i]);
    }
    rows = std::move(r2);
    row_source = std::move(s2);
  }

  // Orbit representatives among rows through vertex 0.
  const auto perms = length_preserving_perms(*host, 40320);
  std::vector<char> is_rep(rows.size(), 1);
  if (!perms.empty()) {
    std::set<std::vector<VertexId>> keys;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].front() != 0) continue;
      std::vector<VertexId> best;
      for (const auto& g : perms) {
        std::vector<VertexId> img;
        for (VertexId v : rows[r]) img.push_back(permute(*host, v, g));
        std::sort(img.begin(), img.end());
        if (best.empty() || img < best) best = std::move(img);
      }
      if (!keys.insert(best).second) is_rep[r] = 0;
    }
  }

  Dlx dlx(static_cast<int>(n), rows);
  Meter meter(budget);
  std::vector<int> chosen;
  int res = 0;
  dlx.cover(1);
  for (int x = dlx.down(1); x != 1; x = dlx.down(x)) {
    if (!is_rep[static_cast<std::size_t>(dlx.row(x))]) continue;
    if (!meter.tick()) {
      res = -1;
      break;
    }
    chosen.assign(1, dlx.row(x));
    dlx.take(x);
    res = dlx.search(meter, chosen);
    dlx.untake(x);
    if (res != 0) break;
  }
  dlx.uncover(1);
  result.nodes = meter.nodes();
  if (res == -1) {
    result.status = Status::budget_exceeded;
    return result;
  }
  if (res == 0) return result;

  PackingCertificate cert;
  cert.host = host;
  for (int r : chosen) cert.placements.push_back(placements[row_source[static_cast<std::size_t>(r)]]);
  cert.canonicalize();
  result.status = Status::sat;
  result.certificate = std::move(cert);
  return result;
}

bool is_window_induced_hamilton(int n, int l, const std::vector<VertexId>& path) {
  if (n < 1 || n > 30) return false;
  const VertexId count = VertexId{1} << n;
  if (path.size() != count) return false;
  std::vector<char> seen(count, 0);
  for (VertexId v : path) {
    if (v >= count || seen[v]) return false;
    seen[v] = 1;
  }
  for (std::size_t i = 0; i < path.size(); ++i)
    for (std::size_t j = i + 1; j < path.size() && j < i + static_cast<std::size_t>(l); ++j) {
      const bool adj = std::popcount(path[i] ^ path[j]) == 1;
      if (adj != (j == i + 1)) return false;
    }
  return true;
}

HamiltonResult consecutive_induced_hamilton(int n, int l, Budget budget) {
  if (n < 1) throw ParameterError("n must be >= 1, got " + std::to_string(n));
  if (l < 2) throw ParameterError("l must be >= 2, got " + std::to_string(l));
  if (n > 24) throw SizingError("n = " + std::to_string(n) + " exceeds the supported maximum 24");
  HamiltonResult result;
  const VertexId count = VertexId{1} << n;
  if (l <= 3 || count < static_cast<VertexId>(l)) {
    result.status = Status::sat;
    result.path = hampath::gray_cycle_ids(n);
    return result;
  }

  Meter meter(budget);
  std::vector<VertexId> path(count);
  std::vector<int> next(count + 1, 0);
  std::vector<char> visited(count, 0);
  path[0] = 0;
  path[1] = 1;
  visited[0] = visited[1] = 1;
  std::size_t p = 2;
  while (true) {
    if (p == count) {
      result.status = Status::sat;
      result.path = std::move(path);
      result.nodes = meter.nodes();
      return result;
    }
    bool advanced = false;
    while (next[p] < n) {
      const VertexId w = path[p - 1] ^ (VertexId{1} << next[p]++);
      if (visited[w]) continue;
      bool ok = true;
      for (std::size_t i = 2; i < static_cast<std::size_t>(l) && i <= p; ++i)
        if (std::popcount(w ^ path[p - i]) == 1) {
          ok = false;
          break;
        }
      if (!ok) continue;
      if (!meter.tick()) {
        result.status = Status::budget_exceeded;
        result.nodes = meter.nodes();
        return result;
      }
      path[p] = w;
      visited[w] = 1;
      ++p;
      next[p] = 0;
      advanced = true;
      break;
    }
    if (advanced) continue;
    --p;
    if (p < 2) break;
    visited[path[p]] = 0;
  }
  result.status = Status::unsat;
  result.nodes = meter.nodes();
  return result;
}

std::vector<std::vector<VertexId>> enumerate_subgraph_copies(const PatternGraph& pattern, const Box& host,
                                                             std::uint64_t limit) {
  const int k = pattern.size();
  std::vector<std::vector<int>> nbrs(static_cast<std::size_t>(k));
  for (auto [i, j] : pattern.edges()) {
    nbrs[static_cast<std::size_t>(i)].push_back(j);
    nbrs[static_cast<std::size_t>(j)].push_back(i);
  }
  // Breadth-first order so most vertices have an earlier neighbour.
  std::vector<int> order;
  std::vector<char> placed(static_cast<std::size_t>(k), 0);
  for (int s = 0; s < k; ++s) {
    if (placed[static_cast<std::size_t>(s)]) continue;
    placed[static_cast<std::size_t>(s)] = 1;
    std::size_t head = order.size();
    order.push_back(s);
    while (head < order.size()) {
      const int u = order[head++];
      for (int w : nbrs[static_cast<std::size_t>(u)])
        if (!placed[static_cast<std::size_t>(w)]) {
          placed[static_cast<std::size_t>(w)] = 1;
          order.push_back(w);
        }
    }
  }
  std::vector<int> pos(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

  auto host_neighbours = [&host](VertexId v) {
    std::vector<VertexId> out;
    for (int c = 0; c < host.dimension(); ++c) {
      const int x = host.coordinate(v, c);
      if (x > 0) out.push_back(v - host.stride(c));
      if (x + 1 < host.factor(c)) out.push_back(v + host.stride(c));
    }
    return out;
  };

  std::vector<std::vector<VertexId>> out;
  std::vector<VertexId> map(static_cast<std::size_t>(k), 0);
  std::vector<char> used(static_cast<std::size_t>(host.size()), 0);
  std::function<void(int)> rec = [&](int depth) {
    if (depth == k) {
      if (out.size() >= limit) throw BudgetExceeded("more than " + std::to_string(limit) + " subgraph copies");
      out.push_back(map);
      return;
    }
    const int u = order[static_cast<std::size_t>(depth)];
    int anchor = -1;
    for (int w : nbrs[static_cast<std::size_t>(u)])
      if (pos[static_cast<std::size_t>(w)] < depth) {
        anchor = w;
        break;
      }
    std::vector<VertexId> cands;
    if (anchor >= 0) {
      cands = host_neighbours(map[static_cast<std::size_t>(anchor)]);
      std::sort(cands.begin(), cands.end());
    } else {
      cands.resize(static_cast<std::size_t>(host.size()));
      std::iota(cands.begin(), cands.end(), VertexId{0});
    }
    for (VertexId c : cands) {
      if (used[c]) continue;
      bool ok = true;
      for (int w : nbrs[static_cast<std::size_t>(u)])
        if (pos[static_cast<std::size_t>(w)] < depth && !host.adjacent(map[static_cast<std::size_t>(w)], c)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      used[c] = 1;
      map[static_cast<std::size_t>(u)] = c;
      rec(depth + 1);
      used[c] = 0;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

PackingCertificate greedy_p3_power_packing(int k, int n, std::uint64_t seed) {
  if (k < 1) throw ParameterError("k must be >= 1");
  if (n < 0 || n > 24) throw SizingError("n must be in 0..24");
  const Box host = Box::cube(n);
  auto host_ptr = std::make_shared<const Box>(host);
  auto pattern = std::make_shared<const PatternGraph>(PatternGraph::full(Box::power(3, k)));
  auto bit = [n](int c) { return VertexId{1} << (n - 1 - c); };

  struct Candidate {
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> omitted;
    VertexId fixed = 0;
  };
  std::vector<Candidate> cands;
  if (n >= 2 * k) {
    // k disjoint coordinate pairs, listed with increasing first elements.
    std::vector<std::pair<int, int>> pairs;
    std::vector<char> taken(static_cast<std::size_t>(n), 0);
    std::function<void(int)> choose = [&](int from) {
      if (static_cast<int>(pairs.size()) == k) {
        std::vector<int> free;
        for (int c = 0; c < n; ++c)
          if (!taken[static_cast<std::size_t>(c)]) free.push_back(c);
        const VertexId free_count = VertexId{1} << free.size();
        const int combos = 1 << (2 * k);
        for (int o = 0; o < combos; ++o)
          for (VertexId f = 0; f < free_count; ++f) {
            Candidate cd;
            cd.pairs = pairs;
            for (int i = 0; i < k; ++i) cd.omitted.push_back(o >> (2 * (k - 1 - i)) & 3);
            for (std::size_t i = 0; i < free.size(); ++i)
              if (f >> (free.size() - 1 - i) & 1) cd.fixed |= bit(free[i]);
            cands.push_back(std::move(cd));
          }
        return;
      }
      for (int a = from; a < n; ++a) {
        if (taken[static_cast<std::size_t>(a)]) continue;
        for (int b = a + 1; b < n; ++b) {
          if (taken[static_cast<std::size_t>(b)]) continue;
          taken[static_cast<std::size_t>(a)] = taken[static_cast<std::size_t>(b)] = 1;
          pairs.emplace_back(a, b);
          choose(a + 1);
          pairs.pop_back();
          taken[static_cast<std::size_t>(a)] = taken[static_cast<std::size_t>(b)] = 0;
        }
      }
    };
    choose(0);
  }
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::shuffle(cands.begin(), cands.end(), rng);
  }

  PackingCertificate cert;
  cert.host = host_ptr;
  std::vector<char> used(static_cast<std::size_t>(host.size()), 0);
  for (const auto& cd : cands) {
    // Path order in a pair's Q_2: neighbour, antipode, other neighbour of the omitted vertex.
    std::vector<VertexId> image{cd.fixed};
    for (int i = 0; i < k; ++i) {
      const auto [a, b] = cd.pairs[static_cast<std::size_t>(i)];
      const int o = cd.omitted[static_cast<std::size_t>(i)];
      std::vector<VertexId> step;
      for (int s : {o ^ 1, o ^ 3, o ^ 2}) step.push_back(((s >> 1 & 1) ? bit(a) : 0) | ((s & 1) ? bit(b) : 0));
      std::vector<VertexId> next;
      for (VertexId pre : image)
        for (VertexId s : step) next.push_back(pre | s);
      image = std::move(next);
    }
    if (std::any_of(image.begin(), image.end(), [&](VertexId v) { return used[v] != 0; })) continue;
    for (VertexId v : image) used[v] = 1;
    Placement p{pattern, host_ptr, std::move(image), Mode::induced, {}};
    for (const auto& [a, b] : cd.pairs) p.blocks.push_back({a, b});
    cert.placements.push_back(std::move(p));
  }
  cert.uncovered = complement_of_union(host, cert.placements);
  cert.canonicalize();
  return cert;
}

}  // namespace cubepack::oracle
