// Compiled with -mavx2; only reached after a runtime CPU check.

#include "buchi/simd/square_filter.hpp"

#include <immintrin.h>

namespace buchi::simd {

void filter_avx2(std::span<const std::int64_t> first_squares, std::int64_t second_square,
                 int length, std::span<std::uint8_t> survivors) {
  const std::size_t n = first_squares.size();
  const __m256i residues = _mm256_set1_epi64x(static_cast<long long>(kSquaresMod64));
  const __m256i low6 = _mm256_set1_epi64x(63);
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  const __m256i zero = _mm256_setzero_si256();
  const __m256i second = _mm256_set1_epi64x(second_square);

  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256i prev = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(first_squares.data() + j));
    __m256i cur = second;
    __m256i alive = _mm256_set1_epi64x(-1);
    for (int k = 3; k <= length; ++k) {
      __m256i next = _mm256_add_epi64(_mm256_sub_epi64(_mm256_add_epi64(cur, cur), prev), two);
      __m256i negative = _mm256_cmpgt_epi64(zero, next);
      __m256i bit = _mm256_and_si256(_mm256_srlv_epi64(residues, _mm256_and_si256(next, low6)), one);
      __m256i residue_ok = _mm256_cmpeq_epi64(bit, one);
      alive = _mm256_and_si256(alive, _mm256_andnot_si256(negative, residue_ok));
      if (_mm256_testz_si256(alive, alive)) break;
      prev = cur;
      cur = next;
    }
    const int mask = _mm256_movemask_pd(_mm256_castsi256_pd(alive));
    survivors[j + 0] = static_cast<std::uint8_t>(mask & 1);
    survivors[j + 1] = static_cast<std::uint8_t>((mask >> 1) & 1);
    survivors[j + 2] = static_cast<std::uint8_t>((mask >> 2) & 1);
    survivors[j + 3] = static_cast<std::uint8_t>((mask >> 3) & 1);
  }
  if (j < n) {
    filter_scalar(first_squares.subspan(j), second_square, length, survivors.subspan(j));
  }
}

}  // namespace buchi::simd
