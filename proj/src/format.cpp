// SPDX-License-Identifier: Apache-2.0
#include "cubepack/format.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <unistd.h>

#include "cubepack/error.hpp"

namespace cubepack::format {

namespace {

std::string list_or_dash(const std::string& s) { return s.empty() ? "-" : s; }

std::string lengths_text(const Box& box) {
  std::string out;
  for (int i = 0; i < box.dimension(); ++i) {
    if (i) out += ',';
    out += std::to_string(box.factor(i));
  }
  return list_or_dash(out);
}

std::string vtext(const Box& box, VertexId v) { return list_or_dash(to_string(box.decode(v))); }

std::string pattern_line(int id, const PatternGraph& p) {
  std::string out = "pattern " + std::to_string(id) + " ambient " + lengths_text(p.ambient()) + " verts ";
  std::string verts;
  for (int i = 0; i < p.size(); ++i) {
    if (i) verts += ';';
    verts += vtext(p.ambient(), p.vertex(i));
  }
  out += verts;
  if (p.has_explicit_edges()) {
    std::string edges;
    for (auto [a, b] : p.edges()) {
      if (!edges.empty()) edges += ';';
      edges += std::to_string(a) + "-" + std::to_string(b);
    }
    out += " edges " + list_or_dash(edges);
  }
  return out;
}

// Pattern ids by first use, compared by value.
class PatternTable {
 public:
  int id(const std::shared_ptr<const PatternGraph>& p) {
    if (auto it = by_ptr_.find(p.get()); it != by_ptr_.end()) return it->second;
    for (std::size_t i = 0; i < patterns_.size(); ++i)
      if (*patterns_[i] == *p) return by_ptr_[p.get()] = static_cast<int>(i);
    patterns_.push_back(p);
    return by_ptr_[p.get()] = static_cast<int>(patterns_.size() - 1);
  }
  const std::vector<std::shared_ptr<const PatternGraph>>& patterns() const { return patterns_; }

 private:
  std::map<const PatternGraph*, int> by_ptr_;
  std::vector<std::shared_ptr<const PatternGraph>> patterns_;
};

std::string copy_line(int pid, const Placement& p, const std::uint32_t* mult) {
  std::string out = "copy " + std::to_string(pid) + " mode " + std::string(to_string(p.mode));
  if (mult) out += " mult " + std::to_string(*mult);
  out += " map ";
  for (int i = 0; i < p.pattern->size(); ++i) {
    if (i) out += ';';
    out += vtext(p.pattern->ambient(), p.pattern->vertex(i));
    out += "->";
    out += vtext(*p.host, p.image[static_cast<std::size_t>(i)]);
  }
  if (!p.blocks.empty()) {
    out += " blocks ";
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
      if (b) out += '|';
      std::string coords;
      for (std::size_t c = 0; c < p.blocks[b].size(); ++c) {
        if (c) coords += ',';
        coords += std::to_string(p.blocks[b][c]);
      }
      out += list_or_dash(coords);
    }
  }
  return out;
}

std::string header(const char* kind) { return std::string("%cubepack v1 ") + kind + "\n"; }

// ---- parsing ----

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long to_int(std::string_view s, int line) {
  long long v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError("expected an integer, got '" + std::string(s) + "'", line);
  return v;
}

std::vector<int> int_list(std::string_view s, int line) {
  std::vector<int> out;
  if (s == "-") return out;
  for (auto part : split(s, ',')) out.push_back(static_cast<int>(to_int(part, line)));
  return out;
}

Box parse_box(std::string_view s, int line) {
  try {
    return Box(int_list(s, line));
  } catch (const ParameterError& e) {
    throw ParseError(e.what(), line);
  }
}

VertexId parse_vid(const Box& box, std::string_view s, int line) {
  try {
    Vertex v;
    if (s != "-") v = parse_vertex(s);
    return box.encode(v);
  } catch (const Error& e) {
    throw ParseError(e.what(), line);
  }
}

struct Raw {
  std::string kind;
  std::optional<Box> host;
  std::optional<std::uint32_t> modulus, residue;
  std::map<int, std::shared_ptr<const PatternGraph>> patterns;
  std::vector<std::pair<Placement, std::uint32_t>> copies;
  std::optional<std::vector<VertexId>> uncovered;
};

Raw parse_raw(std::string_view text) {
  Raw raw;
  int lineno = 0;
  bool have_header = false;
  std::shared_ptr<const Box> host_ptr;
  for (auto line : split(text, '\n')) {
    ++lineno;
    const auto w = words(line);
    if (w.empty() || w[0].front() == '#') continue;
    if (!have_header) {
      if (w.size() != 3 || w[0] != "%cubepack" || w[1] != "v1")
        throw ParseError("expected header '%cubepack v1 <kind>'", lineno);
      raw.kind = std::string(w[2]);
      if (raw.kind != "packing" && raw.kind != "multiset" && raw.kind != "pattern")
        throw ParseError("unknown certificate kind '" + raw.kind + "'", lineno);
      have_header = true;
      continue;
    }
    const auto key = w[0];
    if (key == "host") {
      if (w.size() != 2 || raw.host) throw ParseError("malformed or repeated host line", lineno);
      raw.host = parse_box(w[1], lineno);
      host_ptr = std::make_shared<const Box>(*raw.host);
    } else if (key == "modulus" || key == "residue") {
      if (w.size() != 2) throw ParseError("malformed " + std::string(key) + " line", lineno);
      const long long v = to_int(w[1], lineno);
      if (v < 0 || v > 0xffffffffLL) throw ParseError(std::string(key) + " out of range", lineno);
      (key == "modulus" ? raw.modulus : raw.residue) = static_cast<std::uint32_t>(v);
    } else if (key == "pattern") {
      if ((w.size() != 6 && w.size() != 8) || w[2] != "ambient" || w[4] != "verts" || (w.size() == 8 && w[6] != "edges"))
        throw ParseError("malformed pattern line", lineno);
      const int id = static_cast<int>(to_int(w[1], lineno));
      if (raw.patterns.count(id)) throw ParseError("pattern id " + std::to_string(id) + " defined twice", lineno);
      Box amb = parse_box(w[3], lineno);
      std::vector<VertexId> verts;
      for (auto v : split(w[5], ';')) verts.push_back(parse_vid(amb, v, lineno));
      try {
        if (w.size() == 8) {
          std::vector<std::pair<int, int>> edges;
          if (w[7] != "-")
            for (auto e : split(w[7], ';')) {
              const auto ab = split(e, '-');
              if (ab.size() != 2) throw ParseError("malformed edge '" + std::string(e) + "'", lineno);
              edges.emplace_back(static_cast<int>(to_int(ab[0], lineno)), static_cast<int>(to_int(ab[1], lineno)));
            }
          raw.patterns[id] = std::make_shared<const PatternGraph>(std::move(amb), std::move(verts), std::move(edges));
        } else {
          raw.patterns[id] = std::make_shared<const PatternGraph>(std::move(amb), std::move(verts));
        }
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(e.what(), lineno);
      }
    } else if (key == "copy") {
      if (!host_ptr) throw ParseError("copy before host", lineno);
      std::size_t i = 1;
      auto need = [&](std::string_view k) {
        if (i + 1 >= w.size() || w[i] != k)
          throw ParseError("malformed copy line (expected '" + std::string(k) + "')", lineno);
      };
      if (w.size() < 2) throw ParseError("malformed copy line", lineno);
      const int pid = static_cast<int>(to_int(w[i++], lineno));
      auto pit = raw.patterns.find(pid);
      if (pit == raw.patterns.end()) throw ParseError("unknown pattern id " + std::to_string(pid), lineno);
      need("mode");
      Mode mode;
      try {
        mode = parse_mode(w[i + 1]);
      } catch (const Error& e) {
        throw ParseError(e.what(), lineno);
      }
      i += 2;
      std::uint32_t mult = 1;
      if (i < w.size() && w[i] == "mult") {
        need("mult");
        const long long m = to_int(w[i + 1], lineno);
        if (m < 0 || m > 0xffffffffLL) throw ParseError("mult out of range", lineno);
        mult = static_cast<std::uint32_t>(m);
        i += 2;
      }
      need("map");
      const auto& pat = *pit->second;
      const auto entries = split(w[i + 1], ';');
      i += 2;
      if (static_cast<int>(entries.size()) != pat.size())
        throw ParseError("map has " + std::to_string(entries.size()) + " entries, pattern has " + std::to_string(pat.size()),
                         lineno);
      Placement p{pit->second, host_ptr, {}, mode, {}};
      for (int e = 0; e < pat.size(); ++e) {
        const auto arrow = entries[static_cast<std::size_t>(e)].find("->");
        if (arrow == std::string_view::npos) throw ParseError("map entry without '->'", lineno);
        const auto src = entries[static_cast<std::size_t>(e)].substr(0, arrow);
        const auto dst = entries[static_cast<std::size_t>(e)].substr(arrow + 2);
        if (parse_vid(pat.ambient(), src, lineno) != pat.vertex(e))
          throw ParseError("map entry " + std::to_string(e) + " does not follow the pattern's vertex order", lineno);
        p.image.push_back(parse_vid(*host_ptr, dst, lineno));
      }
      if (i < w.size()) {
        if (w[i] != "blocks" || i + 2 != w.size()) throw ParseError("unexpected trailing fields on copy line", lineno);
        for (auto blk : split(w[i + 1], '|')) p.blocks.push_back(int_list(blk, lineno));
      }
      raw.copies.emplace_back(std::move(p), mult);
    } else if (key == "uncovered") {
      if (!host_ptr) throw ParseError("uncovered before host", lineno);
      if (raw.uncovered) throw ParseError("repeated uncovered line", lineno);
      std::vector<VertexId> u;
      if (w.size() > 2) throw ParseError("malformed uncovered line", lineno);
      if (w.size() == 2 && w[1] != "-")
        for (auto v : split(w[1], ';')) u.push_back(parse_vid(*host_ptr, v, lineno));
      raw.uncovered = std::move(u);
    } else {
      throw ParseError("unknown record '" + std::string(key) + "'", lineno);
    }
  }
  if (!have_header) throw ParseError("empty document", 0);
  return raw;
}

PackingCertificate to_packing(Raw& raw) {
  if (!raw.host) throw ParseError("packing without host line", 0);
  PackingCertificate cert;
  cert.host = raw.copies.empty() ? std::make_shared<const Box>(*raw.host) : raw.copies.front().first.host;
  for (auto& [p, mult] : raw.copies) {
    if (mult != 1) throw ParseError("packing copies cannot carry multiplicities", 0);
    cert.placements.push_back(std::move(p));
  }
  if (raw.uncovered) cert.uncovered = std::move(*raw.uncovered);
  return cert;
}

MultisetCover to_multiset(Raw& raw) {
  if (!raw.host) throw ParseError("multiset without host line", 0);
  if (!raw.modulus || !raw.residue) throw ParseError("multiset needs modulus and residue lines", 0);
  if (raw.uncovered) throw ParseError("multiset cannot have an uncovered line", 0);
  MultisetCover cover;
  cover.host = raw.copies.empty() ? std::make_shared<const Box>(*raw.host) : raw.copies.front().first.host;
  cover.modulus = *raw.modulus;
  cover.residue = *raw.residue;
  for (auto& [p, mult] : raw.copies) cover.entries.push_back(CoverEntry{std::move(p), mult});
  return cover;
}

PatternGraph to_pattern(Raw& raw) {
  if (raw.patterns.size() != 1) throw ParseError("pattern document needs exactly one pattern line", 0);
  return *raw.patterns.begin()->second;
}

}  // namespace

std::string serialize(const PackingCertificate& input) {
  PackingCertificate cert = input;
  cert.canonicalize();
  PatternTable table;
  std::vector<int> ids;
  for (const auto& p : cert.placements) ids.push_back(table.id(p.pattern));
  std::string out = header("packing");
  out += "host " + lengths_text(*cert.host) + "\n";
  for (std::size_t i = 0; i < table.patterns().size(); ++i)
    out += pattern_line(static_cast<int>(i), *table.patterns()[i]) + "\n";
  for (std::size_t i = 0; i < cert.placements.size(); ++i) out += copy_line(ids[i], cert.placements[i], nullptr) + "\n";
  std::string unc;
  for (std::size_t i = 0; i < cert.uncovered.size(); ++i) {
    if (i) unc += ';';
    unc += vtext(*cert.host, cert.uncovered[i]);
  }
  out += "uncovered " + list_or_dash(unc) + "\n";
  return out;
}

std::string serialize(const MultisetCover& input) {
  MultisetCover cover = input;
  cover.canonicalize();
  PatternTable table;
  std::vector<int> ids;
  for (const auto& e : cover.entries) ids.push_back(table.id(e.placement.pattern));
  std::string out = header("multiset");
  out += "host " + lengths_text(*cover.host) + "\n";
  out += "modulus " + std::to_string(cover.modulus) + "\n";
  out += "residue " + std::to_string(cover.residue) + "\n";
  for (std::size_t i = 0; i < table.patterns().size(); ++i)
    out += pattern_line(static_cast<int>(i), *table.patterns()[i]) + "\n";
  for (std::size_t i = 0; i < cover.entries.size(); ++i)
    out += copy_line(ids[i], cover.entries[i].placement, &cover.entries[i].multiplicity) + "\n";
  return out;
}

std::string serialize(const PatternGraph& pattern) { return header("pattern") + pattern_line(0, pattern) + "\n"; }

Document parse(std::string_view text) {
  Raw raw = parse_raw(text);
  if (raw.kind == "packing") return to_packing(raw);
  if (raw.kind == "multiset") return to_multiset(raw);
  return to_pattern(raw);
}

PackingCertificate parse_packing(std::string_view text) {
  Raw raw = parse_raw(text);
  if (raw.kind != "packing") throw ParseError("expected a packing certificate, got " + raw.kind, 1);
  return to_packing(raw);
}

MultisetCover parse_multiset(std::string_view text) {
  Raw raw = parse_raw(text);
  if (raw.kind != "multiset") throw ParseError("expected a multiset cover, got " + raw.kind, 1);
  return to_multiset(raw);
}

PatternGraph parse_pattern(std::string_view text) {
  Raw raw = parse_raw(text);
  if (raw.kind != "pattern") throw ParseError("expected a pattern document, got " + raw.kind, 1);
  return to_pattern(raw);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename into " + path.string() + ": " + ec.message());
  }
}

}  // namespace cubepack::format
