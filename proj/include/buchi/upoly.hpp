#pragma once

#include "buchi/exact.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace buchi {

/// Dense univariate polynomial over Q, coefficient k multiplies z^k.
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients and equality is structural.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rat> coeffs);
  UPoly(std::initializer_list<Rat> coeffs) : UPoly(std::vector<Rat>(coeffs)) {}

  static UPoly constant(const Rat& c);
  static UPoly monomial(const Rat& c, std::size_t degree);
  /// Product of (z - root) over the given roots.
  static UPoly from_roots(const std::vector<Rat>& roots);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  /// Coefficient of z^k (zero past the degree).
  Rat coeff(std::size_t k) const;
  const Rat& leading() const;
  /// Multiplicity of the root z = 0.
  std::size_t order_at_zero() const;

  Rat operator()(const Rat& z) const;

  UPoly operator-() const;
  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const UPoly& o);
  UPoly& operator*=(const Rat& c);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(UPoly a, const UPoly& b) { return a *= b; }
  friend UPoly operator*(UPoly a, const Rat& c) { return a *= c; }
  friend UPoly operator*(const Rat& c, UPoly a) { return a *= c; }

  bool operator==(const UPoly& o) const { return coeffs_ == o.coeffs_; }

  UPoly pow(unsigned exponent) const;
  UPoly derivative() const;
  UPoly monic() const;

  /// Quotient and remainder; throws DomainError on a zero divisor.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
  /// Monic gcd (zero when both inputs are zero).
  static UPoly gcd(UPoly a, UPoly b);

  /// Human readable form in the given variable, e.g. "3*z^2 - 1/2*z + 1".
  std::string str(const std::string& var = "z") const;

 private:
  void trim();
  std::vector<Rat> coeffs_;
};

}  // namespace buchi
