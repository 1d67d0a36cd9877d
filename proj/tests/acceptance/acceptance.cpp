// SPDX-License-Identifier: Apache-2.0
// Acceptance run: one PASS/FAIL line per criterion, exit 1 on any FAIL.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <variant>
#include <string>
#include <vector>

#include "cubepack/antipodal.hpp"
#include "cubepack/audit.hpp"
#include "cubepack/error.hpp"
#include "cubepack/format.hpp"
#include "cubepack/hampath.hpp"
#include "cubepack/induced.hpp"
#include "cubepack/modcover.hpp"
#include "cubepack/oracle.hpp"

using namespace cubepack;

namespace {

// Collects the first failure message; later checks are skipped.
struct Check {
  std::string why;
  bool ok() const { return why.empty(); }
  void expect(bool cond, const std::string& msg) {
    if (ok() && !cond) why = msg;
  }
};

std::vector<std::uint64_t> coverage(const MultisetCover& c) {
  std::vector<std::uint64_t> cov(c.host->size(), 0);
  for (const auto& e : c.entries)
    for (VertexId v : e.placement.image) cov[v] += e.multiplicity;
  return cov;
}

std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

int order_of_two(int l) {
  int m = 1;
  for (int x = 2 % l; x != 1 % l; x = x * 2 % l) ++m;
  return m;
}

// Closed form for the non-induced packing, computed from scratch.
std::uint64_t closed_form(int l, int t, int n) {
  const int v = std::countr_zero(static_cast<unsigned>(l));
  const int odd = l >> v;
  const int m = odd == 1 ? 1 : order_of_two(odd);
  const int rest = n - t * v;
  const int r = rest / m, a = rest % m;
  std::uint64_t sum = 0;
  for (int s = 0; s < t; ++s) {
    std::uint64_t p = 1;
    for (int i = 0; i < s; ++i) p *= (std::uint64_t{1} << m) - 1;
    sum += binom(r, s) * p;
  }
  return (std::uint64_t{1} << (t * v)) * (std::uint64_t{1} << a) * sum;
}

bool has_mode(const audit::AuditReport& rep, Mode want) {
  for (const auto& m : rep.mode_verified) {
    if (!m) return false;
    if (want == Mode::induced && *m == Mode::subgraph) return false;
    if (want == Mode::isometric && *m != Mode::isometric) return false;
  }
  return true;
}

std::string criterion1() {
  Check c;
  std::vector<PatternGraph> hs{PatternGraph(Box::cube(1), {0, 1}), PatternGraph(Box::cube(2), {0b00, 0b01, 0b11}),
                               PatternGraph::full(Box::cube(2))};
  // Every 6-vertex induced subgraph of Q_3.
  std::vector<PatternGraph> six;
  for (VertexId a = 0; a < 8; ++a)
    for (VertexId b = a + 1; b < 8; ++b) {
      std::vector<VertexId> vs;
      for (VertexId v = 0; v < 8; ++v)
        if (v != a && v != b) vs.push_back(v);
      six.emplace_back(Box::cube(3), vs);
    }
  auto run = [&](const PatternGraph& h, int n, bool lift) {
    auto cover = modcover::shift_l_partition(h, n);
    if (lift) cover = modcover::lift_to_path_power(cover, h.size());
    const auto rep = audit::verify_multiset(cover);
    c.expect(rep.valid, "verify_multiset failed");
    for (auto v : coverage(cover)) c.expect(v == static_cast<std::uint64_t>(h.size()), "coverage is not exactly |H|");
  };
  for (const auto& h : hs) {
    const int k = h.ambient().dimension();
    for (int n = k; n <= k + 2; ++n) {
      run(h, n, false);
      run(h, n, true);
    }
  }
  for (std::size_t i = 0; i < six.size(); ++i)
    for (int n = 3; n <= 5; ++n) run(six[i], n, i == 0 || n == 3);
  return c.why;
}

std::string criterion2() {
  Check c;
  std::vector<PatternGraph> hs{PatternGraph(Box::cube(1), {0, 1}), PatternGraph(Box::cube(2), {0b00, 0b01, 0b11}),
                               PatternGraph(Box::cube(2), {0b00, 0b01, 0b11, 0b10}, {{0, 1}, {1, 2}, {2, 3}})};
  for (const auto& h : hs) {
    const auto l = static_cast<std::uint32_t>(h.size());
    const auto cover = modcover::one_mod_l_partition(h);
    c.expect(cover.modulus == l && cover.residue == 1 % l, "wrong modulus or residue");
    c.expect(audit::verify_multiset(cover).valid, "verify_multiset failed");
    for (auto v : coverage(cover)) c.expect(v % l == 1 % l, "coverage not 1 mod l");
    for (const auto& e : cover.entries) c.expect(validate_placement(e.placement).isometric, "non-isometric copy");
    auto pat = std::make_shared<const PatternGraph>(h);
    const auto gens = enumerate_placements(pat, cover.host, Mode::isometric);
    const auto solved = modcover::congruence_cover_solve(cover.host, gens, l, 1 % l);
    c.expect(solved.has_value(), "congruence_cover_solve found no solution");
    if (solved) c.expect(audit::verify_multiset(*solved).valid, "solver output failed verify_multiset");
  }
  return c.why;
}

std::string criterion3() {
  Check c;
  for (int l : {3, 5, 6})
    for (int t : {1, 2})
      for (int n = hampath::any_min_dimension(l, t); n <= 14; ++n) {
        const auto p = hampath::pack_any_path_power(l, t, n);
        for (const auto& copy : p.copies)
          for (const auto& b : copy.blocks) c.expect(hampath::is_valid_block(p.host, b), "invalid block order");
        c.expect(audit::verify_packing(p.to_certificate()).valid, "verify_packing failed");
        c.expect(p.uncovered.size() == closed_form(l, t, n),
                 "count mismatch l=" + std::to_string(l) + " t=" + std::to_string(t) + " n=" + std::to_string(n));
      }
  c.expect(hampath::pack_any_path_power(3, 1, 4).uncovered.size() == 1, "l=3 t=1 n=4 is not 1");
  return c.why;
}

std::string criterion4() {
  Check c;
  for (int s = 1; s <= 4; ++s) {
    const auto start = std::chrono::steady_clock::now();
    const auto d = antipodal::ramras_decomposition(s);
    const auto rep = audit::verify_packing(d.to_certificate());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.expect(rep.valid && rep.uncovered.empty(), "not a partition");
    c.expect(has_mode(rep, Mode::induced), "non-induced path");
    for (const auto& p : d.paths) c.expect(std::popcount(p.front() ^ p.back()) == d.n, "endpoints not antipodal");
    if (s == 4) {
      c.expect(d.paths.size() == 2048, "Q_15 should have 2048 paths");
      c.expect(secs < 5, "Q_15 took too long");
    }
  }
  return c.why;
}

std::string criterion5() {
  Check c;
  for (int l = 2; l <= 5; ++l) {
    int d = 0;
    while ((1 << d) < l) ++d;
    ++d;
    const Box host = Box::cube(d);
    std::vector<VertexId> path;
    std::vector<char> used(host.size(), 0);
    std::size_t blocks = 0;
    std::function<void()> rec = [&] {
      if (static_cast<int>(path.size()) == l) {
        hampath::HamOrderedBlock b;
        for (int i = 0; i < d; ++i) b.host_coords.push_back(i);
        b.order = path;
        const auto res = induced::staircase_partition(host, b);
        std::set<VertexId> seen;
        c.expect(res.paths.size() == static_cast<std::size_t>(l - 1), "wrong path count");
        for (const auto& p : res.paths) {
          c.expect(validate_placement(p).induced, "staircase path not induced");
          seen.insert(p.image.begin(), p.image.end());
        }
        c.expect(seen.size() == static_cast<std::size_t>(l * (l - 1)), "not a partition of block x P_{l-1}");
        ++blocks;
        return;
      }
      for (VertexId v = 0; v < host.size(); ++v) {
        if (used[v] || (!path.empty() && !host.adjacent(path.back(), v))) continue;
        used[v] = 1;
        path.push_back(v);
        rec();
        path.pop_back();
        used[v] = 0;
      }
    };
    rec();
    c.expect(blocks > 0, "no blocks enumerated");
  }
  return c.why;
}

std::string criterion6(std::string& note) {
  Check c;
  for (int n = 7; n <= 13; ++n) {
    const auto p = induced::induced_path_power_packing(3, 1, n, 2);
    const auto rep = audit::verify_packing(p.to_certificate());
    c.expect(rep.valid, "verify_packing failed n=" + std::to_string(n));
    c.expect(has_mode(rep, Mode::induced), "non-induced copy n=" + std::to_string(n));
    const auto base = hampath::pack_any_path_power(p.params.b + 1, 1, n - p.params.cube_dim).uncovered.size();
    c.expect(p.uncovered.size() == (std::uint64_t{1} << p.params.cube_dim) * base, "count mismatch");
    c.expect(p.uncovered.size() <= induced::induced_bound_constant(3, 1, 2), "t=1 count above constant");
  }
  const double k = induced::induced_bound_constant(3, 2, 2);
  double worst = 0;
  for (int n = 14; n <= 18; ++n) {
    const auto p = induced::induced_path_power_packing(3, 2, n, 2);
    const auto rep = audit::verify_packing(p.to_certificate());
    c.expect(rep.valid && has_mode(rep, Mode::induced), "t=2 packing invalid n=" + std::to_string(n));
    c.expect(p.uncovered.size() <= k * n, "t=2 count above K*n");
    worst = std::max(worst, static_cast<double>(p.uncovered.size()) / n);
  }
  std::ostringstream os;
  os << "K=" << k << " max uncovered/n=" << worst;
  note = os.str();
  return c.why;
}

std::string criterion7() {
  Check c;
  std::set<audit::Codim1Class> seen;
  for (auto [k, n] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 4}}) {
    auto host = std::make_shared<const Box>(Box::cube(n));
    auto pat = std::make_shared<const PatternGraph>(PatternGraph::full(Box::power(3, k)));
    for (auto& map : oracle::enumerate_subgraph_copies(*pat, *host)) {
      const Placement p{pat, host, map, Mode::subgraph, {}};
      for (int i = 0; i < n; ++i)
        for (int side = 0; side < 2; ++side) {
          try {
            seen.insert(audit::classify_codim1_intersection(p, i, side));
          } catch (const ClassificationFailure& e) {
            c.expect(false, std::string("CLASSIFICATION_FAILURE: ") + e.what());
          }
        }
    }
  }
  c.expect(seen.size() == 4, "only " + std::to_string(seen.size()) + " classes realized");
  return c.why;
}

std::string criterion8(std::string& note) {
  Check c;
  std::ostringstream os;
  for (int n : {6, 7}) {
    std::size_t most = 0, fewest_uncovered = std::size_t{1} << n;
    for (std::uint64_t seed = 0; seed < 32; ++seed) {
      const auto cert = oracle::greedy_p3_power_packing(3, n, seed);
      const auto rep = audit::verify_packing(cert);
      c.expect(rep.valid, "greedy packing invalid");
      const auto sep = audit::separating_audit(rep.uncovered, n, 1);
      c.expect(sep.is_separating, "uncovered set not separating for n=" + std::to_string(n));
      c.expect(sep.size >= 3, "fewer than 3 uncovered for n=" + std::to_string(n));
      const auto c2 = audit::codim2_coverage_check(cert);
      c.expect(c2.passed, "codim2 check failed for n=" + std::to_string(n));
      most = std::max(most, cert.placements.size());
      fewest_uncovered = std::min(fewest_uncovered, rep.uncovered.size());
    }
    os << "Q" << n << ": up to " << most << " copies, min " << fewest_uncovered << " uncovered over 32 seeds; ";
  }
  note = os.str();
  return c.why;
}

std::string criterion9(std::string& note) {
  Check c;
  auto q3 = std::make_shared<const Box>(Box::cube(3));
  const auto t0 = std::chrono::steady_clock::now();
  const auto unsat = oracle::exact_cover_search(q3, std::make_shared<const PatternGraph>(PatternGraph::full(Box({3}))),
                                                Mode::subgraph);
  const double unsat_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(unsat.status == oracle::Status::unsat && unsat_secs < 1, "divisibility case not instantly UNSAT");
  auto p4 = std::make_shared<const PatternGraph>(Box::cube(3), std::vector<VertexId>{0b000, 0b001, 0b011, 0b111});
  const auto sat = oracle::exact_cover_search(q3, p4, Mode::induced);
  c.expect(sat.status == oracle::Status::sat && sat.certificate && audit::verify_packing(*sat.certificate).valid,
           "(Q_3, induced P_4) not SAT");
  const auto ham = oracle::consecutive_induced_hamilton(3, 4, oracle::Budget{100'000'000, 0});
  c.expect(ham.status != oracle::Status::budget_exceeded, "(n=3, l=4) not decided");
  {
    // Brute force over all orders of Q_3.
    std::vector<VertexId> perm{0, 1, 2, 3, 4, 5, 6, 7};
    bool any = false;
    do any = any || oracle::is_window_induced_hamilton(3, 4, perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    c.expect(any == (ham.status == oracle::Status::sat), "(n=3, l=4) disagrees with brute force");
  }
  if (ham.status == oracle::Status::sat) c.expect(oracle::is_window_induced_hamilton(3, 4, ham.path), "bad path");
  for (int n = 1; n <= 10; ++n) {
    const auto g = oracle::consecutive_induced_hamilton(n, 3);
    c.expect(g.status == oracle::Status::sat && oracle::is_window_induced_hamilton(n, 3, g.path), "fast path failed");
    const auto gray = hampath::gray_cycle_ids(n);
    c.expect(g.path == gray, "fast path is not the Gray path");
  }
  note = "(n=3,l=4) " + std::string(oracle::to_string(ham.status)) + " in " + std::to_string(ham.nodes) + " nodes";
  return c.why;
}

std::vector<std::string> all_certificates() {
  std::vector<std::string> out;
  const PatternGraph p3(Box::cube(2), {0b00, 0b01, 0b11});
  out.push_back(format::serialize(modcover::lift_to_path_power(modcover::shift_l_partition(p3, 3), 3)));
  out.push_back(format::serialize(modcover::one_mod_l_partition(p3)));
  out.push_back(format::serialize(
      modcover::one_mod_l_partition(PatternGraph(Box::cube(2), {0b00, 0b01, 0b11, 0b10}, {{0, 1}, {1, 2}, {2, 3}}))));
  out.push_back(format::serialize(hampath::pack_any_path_power(6, 2, 10).to_certificate()));
  out.push_back(format::serialize(antipodal::ramras_decomposition(4).to_certificate()));
  hampath::HamOrderedBlock b{{0, 1, 2}, {0b000, 0b001, 0b011, 0b111, 0b110}};
  auto st = induced::staircase_partition(Box::cube(3), b);
  PackingCertificate sc{st.host, st.paths, complement_of_union(*st.host, st.paths)};
  out.push_back(format::serialize(sc));
  out.push_back(format::serialize(induced::induced_path_power_packing(3, 2, 12, 2).to_certificate()));
  return out;
}

std::string criterion10() {
  Check c;
  const auto a = all_certificates();
  const auto b = all_certificates();
  c.expect(a == b, "serialization differs between runs");
  for (const auto& text : a) {
    const auto doc = format::parse(text);
    const std::string again = std::visit([](const auto& d) { return format::serialize(d); }, doc);
    c.expect(again == text, "parse and re-serialize changed the text");
  }
  return c.why;
}

}  // namespace

int main() {
  struct Item {
    int id;
    const char* name;
    std::function<std::string(std::string&)> run;
  };
  const std::vector<Item> items{
      {1, "shift partitions and lift", [](std::string&) { return criterion1(); }},
      {2, "(1 mod l)-partitions", [](std::string&) { return criterion2(); }},
      {3, "non-induced path-power packings", [](std::string&) { return criterion3(); }},
      {4, "antipodal decompositions", [](std::string&) { return criterion4(); }},
      {5, "staircase", [](std::string&) { return criterion5(); }},
      {6, "induced (P_l)^t packing", criterion6},
      {7, "codimension-1 classification", [](std::string&) { return criterion7(); }},
      {8, "separating lower-bound audit", criterion8},
      {9, "oracle sanity", criterion9},
      {10, "format stability", [](std::string&) { return criterion10(); }},
  };
  int failures = 0;
  for (const auto& item : items) {
    std::string note, why;
    const auto start = std::chrono::steady_clock::now();
    try {
      why = item.run(note);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string& extra = why.empty() ? note : why;
    std::printf("%s criterion %d: %s (%.2fs)%s%s\n", why.empty() ? "PASS" : "FAIL", item.id, item.name, secs,
                extra.empty() ? "" : "  ", extra.c_str());
    if (!why.empty()) ++failures;
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
