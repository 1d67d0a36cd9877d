// SPDX-License-Identifier: Apache-2.0
#include "cubepack/kernels.hpp"

#if defined(CUBEPACK_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#include <bit>

#define CUBEPACK_AVX2 __attribute__((target("avx2,popcnt")))

namespace cubepack::kernels::avx2 {

namespace {

// v % m for 8 lanes with v < 2^24 and m <= kMaxSimdModulus. The float
// quotient can be off by one in either direction; two fix-ups correct it.
CUBEPACK_AVX2 inline __m256i mod_lanes(__m256i v, __m256i m, __m256 inv_m) {
  const __m256 vf = _mm256_cvtepi32_ps(v);
  const __m256i q = _mm256_cvttps_epi32(_mm256_floor_ps(_mm256_mul_ps(vf, inv_m)));
  __m256i r = _mm256_sub_epi32(v, _mm256_mullo_epi32(q, m));
  const __m256i zero = _mm256_setzero_si256();
  r = _mm256_add_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(zero, r), m));
  const __m256i m_minus_1 = _mm256_sub_epi32(m, _mm256_set1_epi32(1));
  r = _mm256_sub_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(r, m_minus_1), m));
  return r;
}

CUBEPACK_AVX2 inline std::size_t popcount_lanes(__m256i v) {
  const __m256i lookup =
      _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
  const __m256i sums = _mm256_sad_epu8(cnt, _mm256_setzero_si256());
  return static_cast<std::size_t>(_mm256_extract_epi64(sums, 0) + _mm256_extract_epi64(sums, 1) +
                                  _mm256_extract_epi64(sums, 2) + _mm256_extract_epi64(sums, 3));
}

}  // namespace

CUBEPACK_AVX2 std::size_t count_equal(std::span<const std::uint32_t> values, std::uint32_t needle) {
  const __m256i target = _mm256_set1_epi32(static_cast<int>(needle));
  std::size_t n = 0;
  std::size_t i = 0;
  for (; i + 8 <= values.size(); i += 8) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values.data() + i));
    const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(v, target)));
    n += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(mask)));
  }
  for (; i < values.size(); ++i) n += (values[i] == needle);
  return n;
}

CUBEPACK_AVX2 std::size_t count_greater(std::span<const std::uint32_t> values, std::uint32_t bound) {
  // Unsigned compare via sign-bit flip.
  const __m256i flip = _mm256_set1_epi32(static_cast<int>(0x80000000u));
  const __m256i b = _mm256_xor_si256(_mm256_set1_epi32(static_cast<int>(bound)), flip);
  std::size_t n = 0;
  std::size_t i = 0;
  for (; i + 8 <= values.size(); i += 8) {
    const __m256i v =
        _mm256_xor_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(values.data() + i)), flip);
    const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpgt_epi32(v, b)));
    n += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(mask)));
  }
  for (; i < values.size(); ++i) n += (values[i] > bound);
  return n;
}

CUBEPACK_AVX2 void reduce_mod(std::span<std::uint32_t> values, std::uint32_t modulus) {
  // Floats are exact only below 2^24.
  if (modulus > kMaxSimdModulus || count_greater(values, (1u << 24) - 1) != 0) {
    scalar::reduce_mod(values, modulus);
    return;
  }
  const __m256i m = _mm256_set1_epi32(static_cast<int>(modulus));
  const __m256 inv = _mm256_set1_ps(1.0f / static_cast<float>(modulus));
  std::size_t i = 0;
  for (; i + 8 <= values.size(); i += 8) {
    auto* p = reinterpret_cast<__m256i*>(values.data() + i);
    _mm256_storeu_si256(p, mod_lanes(_mm256_loadu_si256(p), m, inv));
  }
  for (; i < values.size(); ++i) values[i] %= modulus;
}

CUBEPACK_AVX2 void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
                            std::uint32_t factor, std::uint32_t modulus) {
  if (modulus > kMaxSimdModulus) {
    scalar::axpy_mod(dst, src, factor, modulus);
    return;
  }
  const __m256i m = _mm256_set1_epi32(static_cast<int>(modulus));
  const __m256i f = _mm256_set1_epi32(static_cast<int>(factor));
  const __m256 inv = _mm256_set1_ps(1.0f / static_cast<float>(modulus));
  std::size_t i = 0;
  for (; i + 8 <= dst.size(); i += 8) {
    auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
    const __m256i x = _mm256_add_epi32(_mm256_loadu_si256(d), _mm256_mullo_epi32(s, f));
    _mm256_storeu_si256(d, mod_lanes(x, m, inv));
  }
  const std::uint64_t f64 = factor;
  for (; i < dst.size(); ++i) dst[i] = static_cast<std::uint32_t>((dst[i] + f64 * src[i]) % modulus);
}

CUBEPACK_AVX2 std::size_t popcount(std::span<const std::uint64_t> words) {
  std::size_t n = 0;
  std::size_t i = 0;
  for (; i + 4 <= words.size(); i += 4)
    n += popcount_lanes(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(words.data() + i)));
  for (; i < words.size(); ++i) n += static_cast<std::size_t>(_mm_popcnt_u64(words[i]));
  return n;
}

CUBEPACK_AVX2 bool andnot_any(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::size_t i = 0;
  for (; i + 4 <= a.size(); i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    if (!_mm256_testz_si256(va, _mm256_xor_si256(vb, _mm256_set1_epi64x(-1)))) return true;
  }
  for (; i < a.size(); ++i)
    if (a[i] & ~b[i]) return true;
  return false;
}

CUBEPACK_AVX2 void and_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  std::size_t i = 0;
  for (; i + 4 <= dst.size(); i += 4) {
    auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
    _mm256_storeu_si256(d, _mm256_and_si256(_mm256_loadu_si256(d), s));
  }
  for (; i < dst.size(); ++i) dst[i] &= src[i];
}

}  // namespace cubepack::kernels::avx2

#endif
