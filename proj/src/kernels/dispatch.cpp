// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <cstring>

#include "cubepack/kernels.hpp"

namespace cubepack::kernels {

namespace {

struct Table {
  Isa isa;
  std::size_t (*count_equal)(std::span<const std::uint32_t>, std::uint32_t);
  std::size_t (*count_greater)(std::span<const std::uint32_t>, std::uint32_t);
  void (*reduce_mod)(std::span<std::uint32_t>, std::uint32_t);
  void (*axpy_mod)(std::span<std::uint32_t>, std::span<const std::uint32_t>, std::uint32_t, std::uint32_t);
  std::size_t (*popcount)(std::span<const std::uint64_t>);
  bool (*andnot_any)(std::span<const std::uint64_t>, std::span<const std::uint64_t>);
  void (*and_into)(std::span<std::uint64_t>, std::span<const std::uint64_t>);
};

constexpr Table kScalar{Isa::scalar,       scalar::count_equal, scalar::count_greater, scalar::reduce_mod,
                        scalar::axpy_mod,  scalar::popcount,    scalar::andnot_any,    scalar::and_into};

#if defined(CUBEPACK_HAVE_AVX2_KERNELS)
constexpr Table kAvx2{Isa::avx2,       avx2::count_equal, avx2::count_greater, avx2::reduce_mod,
                      avx2::axpy_mod,  avx2::popcount,    avx2::andnot_any,    avx2::and_into};
#endif

bool cpu_has_avx2() {
#if defined(CUBEPACK_HAVE_AVX2_KERNELS)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

const Table& select() {
  const char* forced = std::getenv("CUBEPACK_SIMD");
  if (forced && std::strcmp(forced, "scalar") == 0) return kScalar;
#if defined(CUBEPACK_HAVE_AVX2_KERNELS)
  if (cpu_has_avx2()) return kAvx2;
#endif
  return kScalar;
}

const Table& table() {
  static const Table& t = select();
  return t;
}

}  // namespace

Isa active_isa() { return table().isa; }

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool avx2_available() { return cpu_has_avx2(); }

std::size_t count_equal(std::span<const std::uint32_t> values, std::uint32_t needle) {
  return table().count_equal(values, needle);
}
std::size_t count_greater(std::span<const std::uint32_t> values, std::uint32_t bound) {
  return table().count_greater(values, bound);
}
void reduce_mod(std::span<std::uint32_t> values, std::uint32_t modulus) { table().reduce_mod(values, modulus); }
void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t factor,
              std::uint32_t modulus) {
  table().axpy_mod(dst, src, factor, modulus);
}
std::size_t popcount(std::span<const std::uint64_t> words) { return table().popcount(words); }
bool andnot_any(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  return table().andnot_any(a, b);
}
void and_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) { table().and_into(dst, src); }

}  // namespace cubepack::kernels
