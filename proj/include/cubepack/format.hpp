// SPDX-License-Identifier: Apache-2.0
#pragma once

// Line-oriented certificate text format.
//
//   %cubepack v1 packing|multiset|pattern
//   host 2,2,2
//   modulus 3                                  (multiset only)
//   residue 1                                  (multiset only)
//   pattern 0 ambient 2,2 verts 0,0;0,1;1,1 [edges 0-1;1-2]
//   copy 0 mode induced [mult 2] map 0,0->0,0,0;... [blocks 0,1|2,3]
//   uncovered 1,0,0;1,1,0                      (packing only)
//
// An empty list is written "-". Lines starting with '#' are comments.

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "cubepack/certificate.hpp"
#include "cubepack/grid.hpp"

namespace cubepack::format {

/// Canonical text; the argument is canonicalized on a copy first.
std::string serialize(const PackingCertificate& cert);
std::string serialize(const MultisetCover& cover);
std::string serialize(const PatternGraph& pattern);

using Document = std::variant<PackingCertificate, MultisetCover, PatternGraph>;

/// Dispatches on the header kind. Throws ParseError with a line number.
Document parse(std::string_view text);
PackingCertificate parse_packing(std::string_view text);
MultisetCover parse_multiset(std::string_view text);
PatternGraph parse_pattern(std::string_view text);

std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary file in the same directory, then renames.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace cubepack::format
