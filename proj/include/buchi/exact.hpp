#pragma once

// Exact integer/rational predicates shared by every module.

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace buchi {

using Int = mpz_class;
using Rat = mpq_class;

/// Raised for violated preconditions on domain inputs (negative isqrt
/// argument, non-prime modulus, malformed points, ...). The CLI maps it to
/// exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// p-adic valuation of a rational. Zero has the explicit value INFINITY.
class PValuation {
 public:
  static PValuation infinity(unsigned long prime) { return PValuation(prime); }
  static PValuation finite(unsigned long prime, long value) {
    return PValuation(prime, value);
  }

  unsigned long prime() const { return prime_; }
  bool is_infinite() const { return !value_.has_value(); }
  /// Throws DomainError when infinite.
  long value() const;

  /// Sum of valuations (valuation of a product). INFINITY absorbs.
  PValuation operator+(const PValuation& other) const;

  bool operator==(const PValuation& other) const = default;
  /// Total order with INFINITY above every finite value.
  std::strong_ordering operator<=>(const PValuation& other) const;

  std::string str() const;

 private:
  explicit PValuation(unsigned long prime) : prime_(prime) {}
  PValuation(unsigned long prime, long value) : prime_(prime), value_(value) {}

  unsigned long prime_;
  std::optional<long> value_;
};

bool is_prime(unsigned long p);

/// floor(sqrt(n)) for n >= 0.
Int isqrt(const Int& n);

bool is_square_int(const Int& n);

/// Nonnegative rational square root when q is a square in Q.
std::optional<Rat> is_square_rat(const Rat& q);

/// v_p(q); INFINITY for q = 0. Throws DomainError when p is not prime.
PValuation vp(const Rat& q, unsigned long p);

/// v_p of a nonzero integer as a plain long (p assumed prime).
long vp_nonzero(const Int& n, unsigned long p);

/// Height max(|num|, |den|) of a rational in lowest terms.
Int height(const Rat& q);

/// Parses "a", "-a", "a/b" into a canonical rational.
Rat parse_rational(const std::string& text);

/// Parses a comma separated list of rationals.
std::vector<Rat> parse_rational_list(const std::string& text);

/// "num/den", or "num" when den = 1.
std::string to_string(const Rat& q);
std::string to_string(const Int& n);

Int factorial(unsigned long n);

}  // namespace buchi
