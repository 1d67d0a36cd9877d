// SPDX-License-Identifier: Apache-2.0
#pragma once

// Linear systems over Z/qZ for small composite q.

#include <cstdint>
#include <optional>
#include <vector>

namespace cubepack::modsolve {

/// Row-major coefficient matrix; every row has the same length.
using Matrix = std::vector<std::vector<std::uint32_t>>;

/// Solves A x == b (mod modulus). Works prime power by prime power (pivoting
/// on the entry of least p-adic valuation) and glues the parts with CRT.
/// Free variables are set to 0. Returns nullopt when no solution exists.
/// Throws BudgetExceeded when rows * cols exceeds `budget`.
std::optional<std::vector<std::uint32_t>> solve_mod(const Matrix& a, const std::vector<std::uint32_t>& b,
                                                    std::uint32_t modulus, std::uint64_t budget);

/// Prime-power factorisation, ascending primes.
std::vector<std::pair<std::uint32_t, std::uint32_t>> prime_powers(std::uint32_t q);

}  // namespace cubepack::modsolve
