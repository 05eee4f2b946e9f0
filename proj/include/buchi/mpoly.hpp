#pragma once

#include "buchi/exact.hpp"

#include <map>
#include <string>
#include <vector>

namespace buchi {

/// Sparse multivariate polynomial over Q in a fixed, ordered list of named
/// variables. Only nonzero coefficients are stored and every exponent
/// vector has one entry per variable.
class MPoly {
 public:
  using Exponents = std::vector<unsigned>;
  using Terms = std::map<Exponents, Rat>;

  explicit MPoly(std::vector<std::string> vars);

  static MPoly constant(const std::vector<std::string>& vars, const Rat& c);
  static MPoly variable(const std::vector<std::string>& vars, const std::string& name);

  const std::vector<std::string>& vars() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned total_degree() const;
  std::size_t index_of(const std::string& name) const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Rat& c);
  friend MPoly operator+(MPoly a, const Rat& c);
  friend MPoly operator-(MPoly a, const Rat& c) { return std::move(a) + Rat(-c); }

  bool operator==(const MPoly& o) const = default;

  MPoly pow(unsigned exponent) const;

  /// Replaces every occurrence of `name` by `value` (same variable list).
  MPoly substitute(const std::string& name, const MPoly& value) const;
  /// Imposes name^2 = square_value, reducing every power of `name` to
  /// degree at most 1.
  MPoly reduce_square(const std::string& name, const MPoly& square_value) const;

  Rat evaluate(const std::map<std::string, Rat>& point) const;

  std::string str() const;

 private:
  void check_compatible(const MPoly& o) const;
  void add_term(const Exponents& e, const Rat& c);

  std::vector<std::string> vars_;
  Terms terms_;
};

/// True iff lhs - rhs is the zero polynomial. Throws DomainError when the
/// variable lists differ.
bool mpoly_identity_equal(const MPoly& lhs, const MPoly& rhs);

}  // namespace buchi
