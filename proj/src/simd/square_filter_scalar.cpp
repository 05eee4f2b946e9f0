#include "buchi/simd/square_filter.hpp"

#include <stdexcept>

namespace buchi::simd {

void filter_scalar(std::span<const std::int64_t> first_squares, std::int64_t second_square,
                   int length, std::span<std::uint8_t> survivors) {
  for (std::size_t j = 0; j < first_squares.size(); ++j) {
    std::int64_t prev = first_squares[j];
    std::int64_t cur = second_square;
    bool alive = true;
    for (int k = 3; k <= length && alive; ++k) {
      std::int64_t next = 2 * cur - prev + 2;
      alive = next >= 0 && ((kSquaresMod64 >> (static_cast<std::uint64_t>(next) & 63U)) & 1U);
      prev = cur;
      cur = next;
    }
    survivors[j] = alive ? 1 : 0;
  }
}

bool kernel_available(Kernel kernel) {
  switch (kernel) {
    case Kernel::Scalar: return true;
    case Kernel::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Kernel best_kernel() { return kernel_available(Kernel::Avx2) ? Kernel::Avx2 : Kernel::Scalar; }

FilterFn kernel_fn(Kernel kernel) {
  if (!kernel_available(kernel)) {
    throw std::invalid_argument("kernel " + std::string(kernel_name(kernel)) + " is not available");
  }
  switch (kernel) {
    case Kernel::Scalar: return &filter_scalar;
    case Kernel::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return &filter_avx2;
#else
      break;
#endif
  }
  return &filter_scalar;
}

std::string_view kernel_name(Kernel kernel) {
  return kernel == Kernel::Avx2 ? "avx2" : "scalar";
}

bool fits_int64(std::int64_t max_square, int length) {
  // |s_k| <= (k-1)(k-2) + (2k-3) * max_square for the closed form; keep a
  // factor of four of headroom for the 2*s_k intermediate.
  if (max_square < 0 || length < 3 || length > 1000000) return false;
  const __int128 len = length;
  const __int128 bound = len * len + 2 * len * static_cast<__int128>(max_square);
  return bound < (static_cast<__int128>(1) << 60);
}

}  // namespace buchi::simd
