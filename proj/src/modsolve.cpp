// SPDX-License-Identifier: Apache-2.0
#include "cubepack/modsolve.hpp"

#include <numeric>
#include <span>
#include <string>
#include <utility>

#include "cubepack/error.hpp"
#include "cubepack/kernels.hpp"

namespace cubepack::modsolve {

namespace {

// Inverse of a unit modulo q by extended Euclid.
std::uint32_t inverse(std::uint32_t a, std::uint32_t q) {
  std::int64_t t = 0, nt = 1, r = q, nr = a % q;
  while (nr != 0) {
    const std::int64_t k = r / nr;
    t = std::exchange(nt, t - k * nt);
    r = std::exchange(nr, r - k * nr);
  }
  if (t < 0) t += q;
  return static_cast<std::uint32_t>(t);
}

int valuation(std::uint32_t x, std::uint32_t p, int cap) {
  if (x == 0) return cap;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

// Solve over Z/p^e. Rows carry the rhs in their last slot.
std::optional<std::vector<std::uint32_t>> solve_prime_power(Matrix rows, std::size_t cols, std::uint32_t p, int e) {
  std::uint32_t q = 1;
  for (int i = 0; i < e; ++i) q *= p;
  for (auto& r : rows) kernels::reduce_mod(r, q);

  std::vector<std::size_t> perm(cols);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> pivot_val;
  const std::size_t m = rows.size();
  std::size_t k = 0;
  for (; k < m && k < cols; ++k) {
    int best = e;
    std::size_t br = 0, bc = 0;
    for (std::size_t r = k; r < m && best > 0; ++r)
      for (std::size_t c = k; c < cols; ++c) {
        const int v = valuation(rows[r][c], p, e);
        if (v < best) {
          best = v;
          br = r;
          bc = c;
          if (v == 0) break;
        }
      }
    if (best == e) break;
    std::swap(rows[k], rows[br]);
    if (bc != k) {
      for (auto& r : rows) std::swap(r[k], r[bc]);
      std::swap(perm[k], perm[bc]);
    }
    std::uint32_t pv = 1;
    for (int i = 0; i < best; ++i) pv *= p;
    const std::uint32_t unit_inv = inverse(rows[k][k] / pv, q);
    for (std::size_t r = k + 1; r < m; ++r) {
      const std::uint32_t x = rows[r][k];
      if (x == 0) continue;
      const std::uint32_t f = static_cast<std::uint32_t>(std::uint64_t{x / pv} * unit_inv % q);
      kernels::axpy_mod(std::span<std::uint32_t>(rows[r]).subspan(k),
                        std::span<const std::uint32_t>(rows[k]).subspan(k), (q - f) % q, q);
    }
    pivot_val.push_back(best);
  }
  const std::size_t rank = k;
  for (std::size_t r = rank; r < m; ++r)
    if (rows[r][cols] != 0) return std::nullopt;

  std::vector<std::uint32_t> y(cols, 0);
  for (std::size_t i = rank; i-- > 0;) {
    std::uint64_t s = rows[i][cols];
    for (std::size_t j = i + 1; j < cols; ++j) s += std::uint64_t{q - rows[i][j]} * y[j] % q;
    s %= q;
    std::uint32_t pv = 1;
    for (int t = 0; t < pivot_val[i]; ++t) pv *= p;
    if (s % pv != 0) return std::nullopt;
    const std::uint32_t unit_inv = inverse(rows[i][i] / pv, q);
    y[i] = static_cast<std::uint32_t>((s / pv) * unit_inv % (q / pv));
  }
  std::vector<std::uint32_t> x(cols, 0);
  for (std::size_t j = 0; j < cols; ++j) x[perm[j]] = y[j];
  return x;
}

}  // namespace

std::vector<std::pair<std::uint32_t, std::uint32_t>> prime_powers(std::uint32_t q) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t p = 2; std::uint64_t{p} * p <= q; ++p) {
    if (q % p != 0) continue;
    std::uint32_t e = 0;
    while (q % p == 0) {
      q /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (q > 1) out.emplace_back(q, 1);
  return out;
}

std::optional<std::vector<std::uint32_t>> solve_mod(const Matrix& a, const std::vector<std::uint32_t>& b,
                                                    std::uint32_t modulus, std::uint64_t budget) {
  if (modulus == 0) throw ParameterError("modulus must be >= 1");
  if (a.size() != b.size()) throw ParameterError("matrix and rhs row counts differ");
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  for (const auto& r : a)
    if (r.size() != cols) throw ParameterError("ragged matrix");
  if (static_cast<std::uint64_t>(a.size()) * std::max<std::uint64_t>(cols, 1) > budget)
    throw BudgetExceeded("system of " + std::to_string(a.size()) + " x " + std::to_string(cols) +
                         " exceeds budget " + std::to_string(budget));
  if (modulus == 1) return std::vector<std::uint32_t>(cols, 0);

  Matrix aug(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    aug[i] = a[i];
    aug[i].push_back(b[i]);
  }

  // CRT: x = x mod Q and x = y mod q, folded one prime power at a time.
  std::vector<std::uint64_t> x(cols, 0);
  std::uint64_t big = 1;
  for (auto [p, e] : prime_powers(modulus)) {
    std::uint32_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) q *= p;
    auto part = solve_prime_power(aug, cols, p, static_cast<int>(e));
    if (!part) return std::nullopt;
    const std::uint64_t inv = inverse(static_cast<std::uint32_t>(big % q), q);
    for (std::size_t j = 0; j < cols; ++j) {
      const std::uint64_t diff = ((*part)[j] + q - x[j] % q) % q;
      x[j] += big * (diff * inv % q);
    }
    big *= q;
  }

  std::vector<std::uint32_t> out(cols);
  for (std::size_t j = 0; j < cols; ++j) out[j] = static_cast<std::uint32_t>(x[j] % modulus);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < cols; ++j) s += std::uint64_t{a[i][j] % modulus} * out[j];
    if (s % modulus != b[i] % modulus) throw Error("modular solver produced a non-solution");
  }
  return out;
}

}  // namespace cubepack::modsolve
