// SPDX-License-Identifier: Apache-2.0
#include <bit>

#include "cubepack/kernels.hpp"

namespace cubepack::kernels::scalar {

std::size_t count_equal(std::span<const std::uint32_t> values, std::uint32_t needle) {
  std::size_t n = 0;
  for (std::uint32_t v : values) n += (v == needle);
  return n;
}

std::size_t count_greater(std::span<const std::uint32_t> values, std::uint32_t bound) {
  std::size_t n = 0;
  for (std::uint32_t v : values) n += (v > bound);
  return n;
}

void reduce_mod(std::span<std::uint32_t> values, std::uint32_t modulus) {
  for (auto& v : values) v %= modulus;
}

void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t factor,
              std::uint32_t modulus) {
  const std::uint64_t f = factor;
  for (std::size_t i = 0; i < dst.size(); ++i)
    dst[i] = static_cast<std::uint32_t>((dst[i] + f * src[i]) % modulus);
}

std::size_t popcount(std::span<const std::uint64_t> words) {
  std::size_t n = 0;
  for (std::uint64_t w : words) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool andnot_any(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return true;
  return false;
}

void and_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] &= src[i];
}

}  // namespace cubepack::kernels::scalar
