#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "buchi/sequences.hpp"
#include "buchi/simd/square_filter.hpp"
#include "generators.hpp"

#include <cstdint>
#include <vector>

using namespace buchi;
using buchi::simd::Kernel;

namespace {

// Straight-line reference: recompute each forced term in GMP and test the
// residue with a table built by squaring.
std::vector<std::uint8_t> oracle(const std::vector<std::int64_t>& firsts, std::int64_t second, int length) {
  bool residue[64] = {};
  for (int x = 0; x < 64; ++x) residue[(x * x) % 64] = true;
  std::vector<std::uint8_t> out;
  for (std::int64_t f : firsts) {
    bool ok = true;
    for (long n = 3; n <= length; ++n) {
      const Int s = closed_form(Int(static_cast<long>(f)), Int(static_cast<long>(second)), n);
      if (sgn(s) < 0) {
        ok = false;
        break;
      }
      const Int r = s % 64;
      ok = ok && residue[r.get_ui()];
    }
    out.push_back(ok ? 1 : 0);
  }
  return out;
}

std::vector<std::uint8_t> run(Kernel k, const std::vector<std::int64_t>& firsts, std::int64_t second, int length) {
  std::vector<std::uint8_t> out(firsts.size(), 7);
  simd::kernel_fn(k)(firsts, second, length, out);
  return out;
}

std::vector<Kernel> available() {
  std::vector<Kernel> ks{Kernel::Scalar};
  if (simd::kernel_available(Kernel::Avx2)) ks.push_back(Kernel::Avx2);
  return ks;
}

}  // namespace

TEST_CASE("residue mask matches squares mod 64") {
  for (std::uint64_t r = 0; r < 64; ++r) {
    bool sq = false;
    for (std::uint64_t x = 0; x < 64; ++x) sq = sq || (x * x) % 64 == r;
    CHECK(((simd::kSquaresMod64 >> r) & 1U) == (sq ? 1U : 0U));
  }
}

TEST_CASE("scalar kernel is always present") {
  CHECK(simd::kernel_available(Kernel::Scalar));
  CHECK(simd::kernel_name(Kernel::Scalar) == "scalar");
  CHECK(simd::kernel_available(simd::best_kernel()));
}

TEST_CASE("kernels agree with the exact oracle on random batches") {
  gen::Gen g(0x5eed'f117);
  for (int trial = 0; trial < 300; ++trial) {
    const int length = static_cast<int>(g.integer(3, 12));
    // Odd sizes exercise the tail after the last full vector.
    const std::size_t n = static_cast<std::size_t>(g.integer(0, 37));
    std::vector<std::int64_t> firsts;
    for (std::size_t i = 0; i < n; ++i) {
      const long x = g.integer(0, 20000);
      firsts.push_back(g.coin() ? x * x : x);
    }
    const long y = g.integer(0, 20000);
    const std::int64_t second = g.coin() ? y * y : y;
    const auto expected = oracle(firsts, second, length);
    for (Kernel k : available()) {
      CAPTURE(simd::kernel_name(k));
      CHECK(run(k, firsts, second, length) == expected);
    }
  }
}

TEST_CASE("negative forced terms are rejected by every kernel") {
  // s_1 large, s_2 = 0 drives the sequence negative at once.
  const std::vector<std::int64_t> firsts{100, 10000, 0, 1};
  for (Kernel k : available()) {
    const auto got = run(k, firsts, 0, 4);
    CHECK(got == oracle(firsts, 0, 4));
    CHECK(got[0] == 0);
    CHECK(got[1] == 0);
  }
}

TEST_CASE("trivial sequences always survive") {
  for (Kernel k : available()) {
    for (long nu = 0; nu < 200; ++nu) {
      const std::vector<std::int64_t> firsts{(nu + 1) * (nu + 1)};
      CHECK(run(k, firsts, (nu + 2) * (nu + 2), 9)[0] == 1);
    }
  }
}

TEST_CASE("fits_int64 guards the recurrence range") {
  CHECK(simd::fits_int64(std::int64_t{1} << 40, 10));
  CHECK_FALSE(simd::fits_int64(std::int64_t{1} << 62, 10));
}

TEST_CASE("search equals the arbitrary-precision reference") {
  for (int length : {3, 4, 5, 6}) {
    for (long bound : {0L, 1L, 7L, 40L, 150L}) {
      CAPTURE(length);
      CAPTURE(bound);
      const auto ref = search_reference(length, bound);
      for (Kernel k : available()) {
        SearchOptions opt;
        opt.kernel = k;
        CHECK(search(length, bound, opt) == ref);
      }
    }
  }
}

TEST_CASE("length-4 search against a brute force over all four terms") {
  const long bound = 60;
  std::vector<std::vector<Int>> expected;
  for (long a = 0; a <= bound; ++a) {
    for (long b = 0; b <= bound; ++b) {
      for (long c = 0; c * c <= 2 * b * b + 2; ++c) {
        if (c * c - 2 * b * b + a * a != 2) continue;
        for (long d = 0; d * d <= 2 * c * c + 2; ++d) {
          if (d * d - 2 * c * c + b * b != 2) continue;
          const bool trivial = (b == a + 1 && c == a + 2 && d == a + 3) || (a >= 0 && b + 1 == a && c + 2 == a && d + 3 == a) ||
                               (a == 1 && b == 0 && c == 1 && d == 2) || (a == 2 && b == 1 && c == 0 && d == 1);
          if (!trivial) expected.push_back({a, b, c, d});
        }
      }
    }
  }
  std::vector<std::vector<Int>> got;
  for (const auto& s : search(4, bound)) got.push_back(s.values());
  CHECK(got == expected);
  // The classical example is the first nontrivial one.
  REQUIRE_FALSE(got.empty());
  CHECK(got.front() == std::vector<Int>{6, 23, 32, 39});
}

TEST_CASE("thread count does not change search results") {
  const auto one = search(5, 400);
  for (unsigned t : {2U, 3U, 8U}) {
    SearchOptions opt;
    opt.threads = t;
    CHECK(search(5, 400, opt) == one);
  }
}
