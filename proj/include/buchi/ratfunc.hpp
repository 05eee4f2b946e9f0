#pragma once

#include "buchi/upoly.hpp"

#include <string>

namespace buchi {

/// Rational function num/den over Q in canonical form: gcd(num, den) = 1
/// and den monic. The zero function is 0/1. Two values are equal exactly
/// when their canonical fields are equal.
class RatFunc {
 public:
  RatFunc() : num_(), den_(UPoly::constant(1)) {}
  RatFunc(const UPoly& num);  // NOLINT(google-explicit-constructor): polynomials embed.
  RatFunc(UPoly num, UPoly den);

  static RatFunc constant(const Rat& c) { return RatFunc(UPoly::constant(c)); }
  /// The identity function z.
  static RatFunc z() { return RatFunc(UPoly{0, 1}); }

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  RatFunc operator-() const { return RatFunc(-num_, den_); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  /// Throws DomainError when b is the zero function.
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  bool operator==(const RatFunc& o) const = default;

  RatFunc pow(unsigned exponent) const;
  RatFunc derivative() const;
  /// n-th derivative, n >= 1.
  RatFunc derivative(unsigned n) const;

  std::string str(const std::string& var = "z") const;

 private:
  void canonicalize();
  UPoly num_;
  UPoly den_;
};

enum class ArithOp { Add, Sub, Mul, Div };

/// Exact field arithmetic in canonical form.
RatFunc ratfunc_arith(const RatFunc& a, const RatFunc& b, ArithOp op);

/// n-th derivative; throws DomainError for n = 0.
RatFunc derivative(const RatFunc& f, unsigned n);

}  // namespace buchi
