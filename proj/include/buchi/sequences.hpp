#pragma once

// Büchi sequences over the integers: tuples whose squares have constant
// second difference 2.

#include "buchi/exact.hpp"
#include "buchi/simd/square_filter.hpp"

#include <optional>
#include <vector>

namespace buchi {

/// A validated Büchi sequence, canonicalized to nonnegative entries
/// (squares only determine |x_i|).
class BuchiSequence {
 public:
  /// Throws DomainError when fewer than 3 values or the second difference
  /// of the squares is not constantly 2.
  explicit BuchiSequence(std::vector<Int> values);

  const std::vector<Int>& values() const { return values_; }
  std::size_t length() const { return values_.size(); }

  auto operator<=>(const BuchiSequence& o) const { return compare(o); }
  bool operator==(const BuchiSequence& o) const { return values_ == o.values_; }

 private:
  std::strong_ordering compare(const BuchiSequence& o) const;
  std::vector<Int> values_;
};

/// x_i^2 = (nu + i)^2 for i = 1..M, with signs[i-1] * x_i = nu + i.
struct TrivialityWitness {
  Int nu;
  std::vector<int> signs;
};

/// s_{i+2} - 2 s_{i+1} + s_i. Throws DomainError for fewer than 3 terms.
std::vector<Int> second_difference(const std::vector<Int>& squares);

bool is_buchi(const std::vector<Int>& values);

std::optional<TrivialityWitness> classify_trivial(const BuchiSequence& seq);

/// Forced value of x_n^2 given x_1^2 and x_2^2:
/// (n-1)(n-2) - (n-2) x_1^2 + (n-1) x_2^2.
Int closed_form(const Int& x1_sq, const Int& x2_sq, long n);

struct SearchOptions {
  unsigned threads = 1;
  /// Prefilter kernel; defaults to the widest the CPU supports.
  std::optional<simd::Kernel> kernel;
};

/// All nontrivial Büchi sequences of the given length with
/// 0 <= x_1, x_2 <= bound, sorted lexicographically. Output does not depend
/// on the thread count or kernel.
std::vector<BuchiSequence> search(int length, const Int& bound, const SearchOptions& options = {});

/// Same contract as search(), computed only with arbitrary-precision
/// arithmetic and no prefilter.
std::vector<BuchiSequence> search_reference(int length, const Int& bound);

}  // namespace buchi
