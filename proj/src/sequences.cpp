#include "buchi/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>

namespace buchi {

BuchiSequence::BuchiSequence(std::vector<Int> values) : values_(std::move(values)) {
  if (!is_buchi(values_)) throw DomainError("not a Büchi sequence");
  for (auto& v : values_) v = abs(v);
}

std::strong_ordering BuchiSequence::compare(const BuchiSequence& o) const {
  const std::size_t n = std::min(values_.size(), o.values_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(values_[i], o.values_[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return values_.size() <=> o.values_.size();
}

std::vector<Int> second_difference(const std::vector<Int>& squares) {
  if (squares.size() < 3) throw DomainError("second difference needs at least 3 terms");
  std::vector<Int> out;
  out.reserve(squares.size() - 2);
  for (std::size_t i = 0; i + 2 < squares.size(); ++i) {
    out.emplace_back(squares[i + 2] - 2 * squares[i + 1] + squares[i]);
  }
  return out;
}

bool is_buchi(const std::vector<Int>& values) {
  if (values.size() < 3) throw DomainError("a Büchi sequence needs at least 3 terms");
  std::vector<Int> squares;
  squares.reserve(values.size());
  for (const auto& x : values) squares.emplace_back(x * x);
  const auto diffs = second_difference(squares);
  return std::all_of(diffs.begin(), diffs.end(), [](const Int& d) { return d == 2; });
}

std::optional<TrivialityWitness> classify_trivial(const BuchiSequence& seq) {
  const auto& x = seq.values();
  for (const Int& nu : {Int(x[0] - 1), Int(-x[0] - 1)}) {
    TrivialityWitness w{nu, {}};
    bool ok = true;
    for (std::size_t i = 0; i < x.size() && ok; ++i) {
      Int shifted = nu + static_cast<unsigned long>(i + 1);
      ok = abs(shifted) == x[i];
      w.signs.push_back(sgn(shifted) < 0 ? -1 : 1);
    }
    if (ok) return w;
  }
  return std::nullopt;
}

Int closed_form(const Int& x1_sq, const Int& x2_sq, long n) {
  return Int((n - 1) * (n - 2)) - Int(n - 2) * x1_sq + Int(n - 1) * x2_sq;
}

namespace {

// Extends (x1, x2) by the closed form; empty when a forced term is negative
// or not a perfect square.
std::optional<std::vector<Int>> extend_pair(const Int& x1, const Int& x2, int length) {
  std::vector<Int> values{x1, x2};
  const Int x1_sq = x1 * x1;
  const Int x2_sq = x2 * x2;
  for (long n = 3; n <= length; ++n) {
    Int forced = closed_form(x1_sq, x2_sq, n);
    if (sgn(forced) < 0 || !is_square_int(forced)) return std::nullopt;
    values.push_back(isqrt(forced));
  }
  return values;
}

// Exact in int64 under fits_int64; rejects most prefilter survivors
// before any arbitrary-precision work.
bool forced_terms_are_squares(std::int64_t x1_sq, std::int64_t x2_sq, int length) {
  std::int64_t prev = x1_sq;
  std::int64_t cur = x2_sq;
  for (int k = 3; k <= length; ++k) {
    const std::int64_t next = 2 * cur - prev + 2;
    if (next < 0) return false;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(next)));
    while (r * r > next) --r;
    while ((r + 1) * (r + 1) <= next) ++r;
    if (r * r != next) return false;
    prev = cur;
    cur = next;
  }
  return true;
}

void keep_if_nontrivial(std::vector<Int> values, std::vector<BuchiSequence>& out) {
  BuchiSequence seq(std::move(values));
  if (!classify_trivial(seq)) out.push_back(std::move(seq));
}

void check_args(int length, const Int& bound) {
  if (length < 3) throw DomainError("search length must be at least 3");
  if (sgn(bound) < 0) throw DomainError("search bound must be nonnegative");
}

}  // namespace

std::vector<BuchiSequence> search_reference(int length, const Int& bound) {
  check_args(length, bound);
  std::vector<BuchiSequence> out;
  for (Int x1 = 0; x1 <= bound; ++x1) {
    for (Int x2 = 0; x2 <= bound; ++x2) {
      if (auto values = extend_pair(x1, x2, length)) keep_if_nontrivial(std::move(*values), out);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BuchiSequence> search(int length, const Int& bound, const SearchOptions& options) {
  check_args(length, bound);
  if (!bound.fits_ulong_p()) return search_reference(length, bound);
  const unsigned long b = bound.get_ui();
  const bool small = bound <= Int(1U << 31U) &&
                     simd::fits_int64(static_cast<std::int64_t>(b) * static_cast<std::int64_t>(b), length);
  if (!small) return search_reference(length, bound);

  const simd::FilterFn filter = simd::kernel_fn(options.kernel.value_or(simd::best_kernel()));

  std::vector<std::int64_t> squares(b + 1);
  for (unsigned long x = 0; x <= b; ++x) squares[x] = static_cast<std::int64_t>(x) * static_cast<std::int64_t>(x);

  const unsigned threads = std::max(1U, options.threads);
  std::vector<std::vector<BuchiSequence>> partial(threads);
  auto worker = [&](unsigned id) {
    std::vector<std::uint8_t> survivors(b + 1);
    // x2 is strided across workers; x1 runs through the kernel.
    for (unsigned long x2 = id; x2 <= b; x2 += threads) {
      filter(squares, squares[x2], length, survivors);
      for (unsigned long x1 = 0; x1 <= b; ++x1) {
        if (!survivors[x1] || !forced_terms_are_squares(squares[x1], squares[x2], length)) continue;
        if (auto values = extend_pair(Int(x1), Int(x2), length)) {
          keep_if_nontrivial(std::move(*values), partial[id]);
        }
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(worker, id);
    for (auto& t : pool) t.join();
  }

  std::vector<BuchiSequence> out;
  for (auto& part : partial) {
    for (auto& seq : part) out.push_back(std::move(seq));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace buchi
