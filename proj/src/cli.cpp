// SPDX-License-Identifier: Apache-2.0
#include "cubepack/cli.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cubepack/antipodal.hpp"
#include "cubepack/audit.hpp"
#include "cubepack/error.hpp"
#include "cubepack/format.hpp"
#include "cubepack/hampath.hpp"
#include "cubepack/induced.hpp"
#include "cubepack/modcover.hpp"
#include "cubepack/oracle.hpp"

namespace cubepack::cli {

namespace {

std::uint64_t default_budget() {
  if (const char* env = std::getenv("CUBEPACK_BUDGET")) {
    std::uint64_t v = 0;
    const std::string_view s(env);
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && p == s.data() + s.size() && v > 0) return v;
  }
  return 100'000'000;
}

// "a..b" or "a".
std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    const int a = std::stoi(text.substr(0, dots));
    const int b = std::stoi(text.substr(dots + 2));
    if (b < a) throw ParameterError("empty range " + text);
    return {a, b};
  } catch (const std::logic_error&) {
    throw ParameterError("bad range '" + text + "', expected A..B");
  }
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

// 2^{tv} 2^{a + m(t-1)} sum_{s<t} C(r,s) for the any-l packing on Q_n.
double any_bound_expr(int l, int t, int n) {
  const int v = std::countr_zero(static_cast<unsigned>(l));
  const int m = hampath::mult_order_of_two(l >> v);
  const int rest = n - t * v;
  const int r = rest / m;
  const int a = rest % m;
  double sum = 0;
  for (int s = 0; s < t; ++s) sum += static_cast<double>(binomial(r, s));
  return std::ldexp(sum, t * v + a + m * (t - 1));
}

std::string fmt_double(double x) {
  if (x == std::floor(x) && std::fabs(x) < 1e15) return std::to_string(static_cast<long long>(x));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void emit(std::ostream& out, const std::string& key, const std::string& value) { out << key << '=' << value << '\n'; }

struct ConstructOpts {
  std::string kind;
  std::string out_path;
  std::string pattern_path;
  int l = 0, t = 1, n = -1, s = 0, lift = 0;
  std::optional<int> m;
};

int do_construct(const ConstructOpts& o, std::ostream& out) {
  std::string text;
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw ParameterError(o.kind + " needs " + what);
  };
  emit(out, "kind", o.kind);
  if (o.kind == "shift-l" || o.kind == "one-mod-l") {
    need(!o.pattern_path.empty(), "--pattern");
    const PatternGraph h = format::parse_pattern(format::read_file(o.pattern_path));
    MultisetCover cover;
    if (o.kind == "shift-l") {
      need(o.n >= 0, "--n");
      cover = modcover::shift_l_partition(h, o.n);
      if (o.lift > 0) cover = modcover::lift_to_path_power(cover, o.lift);
    } else {
      cover = modcover::one_mod_l_partition(h, default_budget());
    }
    emit(out, "host", to_string(*cover.host));
    emit(out, "modulus", std::to_string(cover.modulus));
    emit(out, "residue", std::to_string(cover.residue));
    emit(out, "entries", std::to_string(cover.entries.size()));
    text = format::serialize(cover);
  } else {
    PackingCertificate cert;
    if (o.kind == "odd-power" || o.kind == "any-power") {
      need(o.l > 0 && o.n >= 0, "--l and --n");
      const auto p = o.kind == "odd-power" ? hampath::pack_odd_path_power(o.l, o.t, o.n)
                                           : hampath::pack_any_path_power(o.l, o.t, o.n);
      const int v = std::countr_zero(static_cast<unsigned>(o.l));
      emit(out, "m", std::to_string(hampath::mult_order_of_two(o.l >> v)));
      cert = p.to_certificate();
    } else if (o.kind == "ramras") {
      need(o.s > 0, "--s");
      cert = antipodal::ramras_decomposition(o.s).to_certificate();
    } else if (o.kind == "staircase") {
      need(o.l >= 2, "--l >= 2");
      int d = 1;
      while ((1 << d) < o.l) ++d;
      const Box block_host = Box::cube(d);
      hampath::HamOrderedBlock block;
      for (int c = 0; c < d; ++c) block.host_coords.push_back(c);
      const auto gray = hampath::gray_cycle_ids(d);
      block.order.assign(gray.begin(), gray.begin() + o.l);
      auto res = induced::staircase_partition(block_host, block);
      cert.host = res.host;
      cert.placements = std::move(res.paths);
      cert.uncovered = complement_of_union(*cert.host, cert.placements);
    } else if (o.kind == "induced-power") {
      need(o.l >= 2 && o.n >= 0, "--l and --n");
      const auto p = induced::induced_path_power_packing(o.l, o.t, o.n, o.m);
      emit(out, "m", std::to_string(p.params.m));
      emit(out, "a", std::to_string(p.params.a));
      emit(out, "b", std::to_string(p.params.b));
      emit(out, "K", fmt_double(induced::induced_bound_constant(o.l, o.t, o.m)));
      cert = p.to_certificate();
    } else {
      throw ParameterError("unknown construction '" + o.kind + "'");
    }
    cert.canonicalize();
    emit(out, "host", to_string(*cert.host));
    emit(out, "placements", std::to_string(cert.placements.size()));
    emit(out, "uncovered", std::to_string(cert.uncovered.size()));
    text = format::serialize(cert);
  }
  format::write_atomic(o.out_path, text);
  emit(out, "out", o.out_path);
  return kOk;
}

int do_verify(const std::string& path, bool codim2, bool separating, int k, std::ostream& out, std::ostream& err) {
  const format::Document doc = format::parse(format::read_file(path));
  nlohmann::json report;
  bool ok = true;
  if (const auto* cert = std::get_if<PackingCertificate>(&doc)) {
    const auto rep = audit::verify_packing(*cert);
    report["kind"] = "packing";
    report["audit"] = audit::to_json(rep, *cert->host);
    ok = rep.valid;
    if (codim2) {
      const auto c2 = audit::codim2_coverage_check(*cert);
      report["codim2"] = audit::to_json(c2);
      ok = ok && c2.passed;
    }
    if (separating) {
      if (!cert->host->is_cube()) throw ParameterError("--separating needs a hypercube host");
      const auto sep = audit::separating_audit(rep.uncovered, cert->host->dimension(), k);
      auto j = audit::to_json(sep);
      j["log2n_ceil"] = static_cast<int>(std::ceil(std::log2(static_cast<double>(cert->host->dimension())) - 1e-12));
      report["separating"] = j;
    }
  } else if (const auto* cover = std::get_if<MultisetCover>(&doc)) {
    if (codim2 || separating) throw ParameterError("--codim2 and --separating apply to packings only");
    const auto rep = audit::verify_multiset(*cover);
    report["kind"] = "multiset";
    report["modulus"] = cover->modulus;
    report["residue"] = cover->residue;
    report["audit"] = audit::to_json(rep, *cover->host);
    ok = rep.valid;
  } else {
    err << "error: " << path << " is a pattern, not a certificate\n";
    return kUsage;
  }
  report["valid"] = ok;
  out << report.dump(2) << '\n';
  return ok ? kOk : kInvalid;
}

int do_report_path_power(int l, int t, const std::string& range, bool induced_mode, std::optional<int> m,
                         std::ostream& out) {
  const auto [lo, hi] = parse_range(range);
  out << "n,uncovered,bound_expr_value,log2n_floor\n";
  for (int n = lo; n <= hi; ++n) {
    std::uint64_t uncovered = 0;
    double bound = 0;
    if (induced_mode) {
      const auto p = induced::induced_path_power_packing(l, t, n, m);
      uncovered = p.uncovered.size();
      const int tail = t * p.params.cube_dim;
      bound = std::ldexp(any_bound_expr(p.params.b + 1, t, n - tail), tail);
    } else {
      uncovered = hampath::pack_any_path_power(l, t, n).uncovered.size();
      bound = any_bound_expr(l, t, n);
    }
    out << n << ',' << uncovered << ',' << fmt_double(bound) << ',' << (n >= 1 ? std::bit_width(static_cast<unsigned>(n)) - 1 : 0)
        << '\n';
  }
  return kOk;
}

int do_report_hamilton(int l, const std::string& range, std::uint64_t budget, std::ostream& out) {
  const auto [lo, hi] = parse_range(range);
  out << "n,l,status,nodes\n";
  for (int n = lo; n <= hi; ++n) {
    const auto r = oracle::consecutive_induced_hamilton(n, l, oracle::Budget{budget, 0});
    out << n << ',' << l << ',' << oracle::to_string(r.status) << ',' << r.nodes << '\n';
  }
  return kOk;
}

Mode mode_arg(const std::string& s) {
  try {
    return parse_mode(s);
  } catch (const Error& e) {
    throw ParameterError(e.what());
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct and verify hypercube packing certificates", "cubepack"};
  app.require_subcommand(1);

  ConstructOpts co;
  auto* construct = app.add_subcommand("construct", "build a certificate");
  construct->add_option("kind", co.kind, "shift-l | one-mod-l | odd-power | any-power | ramras | staircase | induced-power")
      ->required();
  construct->add_option("--out", co.out_path, "certificate path")->required();
  construct->add_option("--pattern", co.pattern_path, "pattern file");
  construct->add_option("--l", co.l);
  construct->add_option("--t", co.t);
  construct->add_option("--n", co.n);
  construct->add_option("--s", co.s);
  construct->add_option("--m", co.m, "override m (induced-power)");
  construct->add_option("--lift", co.lift, "shift-l: lift onto (P_{2L})^n");

  std::string verify_path;
  bool codim2 = false, separating = false;
  int sep_k = 1;
  auto* verify = app.add_subcommand("verify", "audit a certificate");
  verify->add_option("path", verify_path)->required();
  verify->add_flag("--codim2", codim2, "codimension-2 coverage check for (P_3)^k packings");
  verify->add_flag("--separating", separating, "separating-family audit of the uncovered set");
  verify->add_option("--k", sep_k, "separate k-sets (with --separating)");

  auto* report = app.add_subcommand("report", "CSV tables");
  report->require_subcommand(1);
  int rl = 0, rt = 1;
  std::string rn;
  bool rinduced = false;
  std::optional<int> rm;
  std::uint64_t rbudget = default_budget();
  auto* rpp = report->add_subcommand("path-power", "uncovered counts of the path-power packings");
  rpp->add_option("--l", rl)->required();
  rpp->add_option("--t", rt);
  rpp->add_option("--n", rn, "A..B")->required();
  rpp->add_flag("--induced", rinduced);
  rpp->add_option("--m", rm);
  auto* rch = report->add_subcommand("consecutive-hamilton", "window-induced Hamilton path search");
  rch->add_option("--l", rl)->required();
  rch->add_option("--n", rn, "A..B")->required();
  rch->add_option("--budget", rbudget);

  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive searches");
  oracle_cmd->require_subcommand(1);
  std::string ohost, opattern, omode = "induced", oout;
  std::uint64_t oseed = 0, obudget = default_budget();
  double oseconds = 0;
  int ok_ = 3, on = 6;
  auto* oec = oracle_cmd->add_subcommand("exact-cover", "perfect packing search");
  oec->add_option("--host", ohost, "factor lengths, e.g. 2,2,2")->required();
  oec->add_option("--pattern", opattern)->required();
  oec->add_option("--mode", omode);
  oec->add_option("--seed", oseed);
  oec->add_option("--budget", obudget);
  oec->add_option("--seconds", oseconds, "wall-clock limit");
  oec->add_option("--out", oout);
  auto* ogr = oracle_cmd->add_subcommand("greedy-p3", "first-fit (P_3)^k packing of Q_n");
  ogr->add_option("--k", ok_);
  ogr->add_option("--n", on);
  ogr->add_option("--seed", oseed);
  ogr->add_option("--out", oout)->required();

  std::string pambient, pverts, pedges, pout;
  auto* pat = app.add_subcommand("pattern", "write a pattern file");
  pat->add_option("--ambient", pambient, "factor lengths, e.g. 2,2")->required();
  pat->add_option("--verts", pverts, "vertices, e.g. 0,0;0,1;1,1")->required();
  pat->add_option("--edges", pedges, "explicit edges, e.g. 0-1;1-2");
  pat->add_option("--out", pout)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*construct) return do_construct(co, out);
    if (*verify) return do_verify(verify_path, codim2, separating, sep_k, out, err);
    if (*rpp) return do_report_path_power(rl, rt, rn, rinduced, rm, out);
    if (*rch) return do_report_hamilton(rl, rn, rbudget, out);
    if (*oec) {
      std::vector<int> lens;
      for (const auto& part : CLI::detail::split(ohost, ',')) lens.push_back(std::stoi(part));
      auto host = std::make_shared<const Box>(std::move(lens));
      auto pattern = std::make_shared<const PatternGraph>(format::parse_pattern(format::read_file(opattern)));
      const auto r = oracle::exact_cover_search(host, pattern, mode_arg(omode), oracle::Budget{obudget, oseconds}, oseed);
      emit(out, "status", std::string(oracle::to_string(r.status)));
      emit(out, "nodes", std::to_string(r.nodes));
      if (r.certificate && !oout.empty()) {
        format::write_atomic(oout, format::serialize(*r.certificate));
        emit(out, "out", oout);
      }
      return r.status == oracle::Status::sat ? kOk : kInvalid;
    }
    if (*ogr) {
      const auto cert = oracle::greedy_p3_power_packing(ok_, on, oseed);
      emit(out, "placements", std::to_string(cert.placements.size()));
      emit(out, "uncovered", std::to_string(cert.uncovered.size()));
      format::write_atomic(oout, format::serialize(cert));
      emit(out, "out", oout);
      return kOk;
    }
    if (*pat) {
      std::string text = "%cubepack v1 pattern\npattern 0 ambient " + pambient + " verts " + pverts;
      if (!pedges.empty()) text += " edges " + pedges;
      const PatternGraph g = format::parse_pattern(text + "\n");
      format::write_atomic(pout, format::serialize(g));
      emit(out, "vertices", std::to_string(g.size()));
      emit(out, "out", pout);
      return kOk;
    }
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: bad number: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kUsage;
}

}  // namespace cubepack::cli
