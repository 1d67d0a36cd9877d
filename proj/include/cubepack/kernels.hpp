// SPDX-License-Identifier: Apache-2.0
#pragma once

// Data-parallel inner loops used by the audits and the modular solver.
//
// Every kernel has a scalar reference in `kernels::scalar`. On x86-64 an AVX2
// variant lives in `kernels::avx2` and is picked at runtime when the CPU
// supports it. Setting CUBEPACK_SIMD=scalar in the environment forces the
// scalar path. The free functions in `kernels` dispatch.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace cubepack::kernels {

enum class Isa { scalar, avx2 };

/// Instruction set the dispatcher selected for this process.
Isa active_isa();
std::string_view to_string(Isa isa);
/// True when the AVX2 variants were compiled in and the CPU supports them.
bool avx2_available();

/// Largest modulus the vectorised axpy_mod / reduce_mod accept. Larger moduli
/// always take the scalar path.
inline constexpr std::uint32_t kMaxSimdModulus = 4095;

namespace scalar {
std::size_t count_equal(std::span<const std::uint32_t> values, std::uint32_t needle);
std::size_t count_greater(std::span<const std::uint32_t> values, std::uint32_t bound);
void reduce_mod(std::span<std::uint32_t> values, std::uint32_t modulus);
void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t factor,
              std::uint32_t modulus);
std::size_t popcount(std::span<const std::uint64_t> words);
bool andnot_any(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
void and_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define CUBEPACK_HAVE_AVX2_KERNELS 1
namespace avx2 {
std::size_t count_equal(std::span<const std::uint32_t> values, std::uint32_t needle);
std::size_t count_greater(std::span<const std::uint32_t> values, std::uint32_t bound);
void reduce_mod(std::span<std::uint32_t> values, std::uint32_t modulus);
void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t factor,
              std::uint32_t modulus);
std::size_t popcount(std::span<const std::uint64_t> words);
bool andnot_any(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
void and_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);
}  // namespace avx2
#endif

/// Number of entries equal to `needle`.
std::size_t count_equal(std::span<const std::uint32_t> values, std::uint32_t needle);
/// Number of entries strictly greater than `bound`.
std::size_t count_greater(std::span<const std::uint32_t> values, std::uint32_t bound);
/// values[i] %= modulus.
void reduce_mod(std::span<std::uint32_t> values, std::uint32_t modulus);
/// dst[i] = (dst[i] + factor * src[i]) % modulus, for dst[i], src[i], factor
/// already reduced.
void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t factor,
              std::uint32_t modulus);
std::size_t popcount(std::span<const std::uint64_t> words);
/// True iff (a[i] & ~b[i]) != 0 for some i. Spans must have equal length.
bool andnot_any(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
void and_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);

}  // namespace cubepack::kernels
