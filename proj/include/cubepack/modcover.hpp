// SPDX-License-Identifier: Apache-2.0
#pragma once

// Multiset covers: shift partitions of Q_n, their lift to (P_{2l})^n, the
// (1 mod l)-partition of (P_{2l})^k, and a generic congruence solver.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "cubepack/certificate.hpp"
#include "cubepack/grid.hpp"

namespace cubepack::modcover {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// All 2^n translates X + u (coordinatewise mod 2) of H, H a pattern in Q_k,
/// k <= n. Every vertex is covered exactly |H| times. Modulus |H|, residue 0.
/// Placements are induced for derived-edge patterns, isometric otherwise.
MultisetCover shift_l_partition(const PatternGraph& h, int n);

/// Copies a cover of Q_n into each of the l^n subcubes prod {2 j_i, 2 j_i + 1}
/// of (P_{2l})^n. Coverage is preserved pointwise.
MultisetCover lift_to_path_power(const MultisetCover& cover, int l);

/// (1 mod l)-partition of (P_{2l})^k by isometric copies of H, l = |H|.
MultisetCover one_mod_l_partition(const PatternGraph& h, std::uint64_t budget = kDefaultBudget);

/// Multiplicities in [0, l) with sum m_c chi_c == r (mod l) at every host
/// vertex, or nullopt if the generator set admits none. Generators with equal
/// vertex sets are merged first. Throws BudgetExceeded.
std::optional<MultisetCover> congruence_cover_solve(std::shared_ptr<const Box> host,
                                                    const std::vector<Placement>& generators, std::uint32_t l,
                                                    std::uint32_t r, std::uint64_t budget = kDefaultBudget);

}  // namespace cubepack::modcover
