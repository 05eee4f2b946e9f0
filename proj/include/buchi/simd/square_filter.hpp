#pragma once

// Data-parallel prefilter for the Büchi sequence search.
//
// Every lane j starts from the pair (s_1, s_2) = (first_squares[j],
// second_square) and runs the second-difference recurrence
//   s_{k+1} = 2 s_k - s_{k-1} + 2,   k = 2 .. length-1.
// The lane survives iff every forced term s_3 .. s_length is nonnegative and
// a quadratic residue mod 64. Survival is a necessary condition for all
// forced terms to be perfect squares; callers confirm survivors exactly.
//
// All kernels produce bit-identical survivor flags. Inputs must satisfy
// fits_int64(max_square, length) so no lane overflows.

#include <cstdint>
#include <span>
#include <string_view>

namespace buchi::simd {

enum class Kernel { Scalar, Avx2 };

using FilterFn = void (*)(std::span<const std::int64_t> first_squares, std::int64_t second_square,
                          int length, std::span<std::uint8_t> survivors);

/// Squares mod 64 as a bitmask: bit r is set iff r is a square mod 64.
inline constexpr std::uint64_t kSquaresMod64 = [] {
  std::uint64_t mask = 0;
  for (std::uint64_t x = 0; x < 64; ++x) mask |= std::uint64_t{1} << ((x * x) & 63U);
  return mask;
}();

void filter_scalar(std::span<const std::int64_t> first_squares, std::int64_t second_square,
                   int length, std::span<std::uint8_t> survivors);

#if defined(__x86_64__) || defined(_M_X64)
void filter_avx2(std::span<const std::int64_t> first_squares, std::int64_t second_square,
                 int length, std::span<std::uint8_t> survivors);
#endif

/// True when the kernel is compiled in and the running CPU supports it.
bool kernel_available(Kernel kernel);

/// Widest available kernel.
Kernel best_kernel();

/// Throws std::invalid_argument for an unavailable kernel.
FilterFn kernel_fn(Kernel kernel);

std::string_view kernel_name(Kernel kernel);

/// True when squares up to max_square and sequence length `length` keep
/// every recurrence term well inside int64.
bool fits_int64(std::int64_t max_square, int length);

}  // namespace buchi::simd
