#pragma once

// Büchi surfaces X_n over Q and the correspondence between their rational
// points and monic quadratics whose values at fixed nodes are squares.
//
// X_n ⊂ P^n is cut out, for i = 3..n, by
//   δ_2 x_i^2 = δ_i δ_2 (δ_i - δ_2) x_0^2 - (δ_i - δ_2) x_1^2 + δ_i x_2^2.

#include "buchi/exact.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace buchi {

/// Pairwise distinct rationals a_1..a_n (n >= 2).
class EvaluationNodes {
 public:
  explicit EvaluationNodes(std::vector<Rat> nodes);
  const std::vector<Rat>& values() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  /// δ_i = a_i - a_1 for i = 2..n.
  std::vector<Rat> deltas() const;

 private:
  std::vector<Rat> nodes_;
};

/// Surface given by distinct nonzero deltas δ_2..δ_n (n = deltas + 1 >= 2;
/// n = 2 is the plane itself).
class BuchiSurface {
 public:
  explicit BuchiSurface(std::vector<Rat> deltas);
  static BuchiSurface from_nodes(const EvaluationNodes& nodes) { return BuchiSurface(nodes.deltas()); }

  const std::vector<Rat>& deltas() const { return deltas_; }
  /// Ambient dimension n of P^n.
  std::size_t n() const { return deltas_.size() + 1; }
  /// δ_i for i = 2..n.
  const Rat& delta(std::size_t i) const { return deltas_.at(i - 2); }

 private:
  std::vector<Rat> deltas_;
};

/// Projective point stored with its first nonzero coordinate scaled to 1.
class ProjectivePoint {
 public:
  explicit ProjectivePoint(std::vector<Rat> coords);
  const std::vector<Rat>& coords() const { return coords_; }
  std::size_t dimension() const { return coords_.size() - 1; }
  bool operator==(const ProjectivePoint& o) const = default;

 private:
  std::vector<Rat> coords_;
};

/// f = x^2 + u x + v.
struct MonicQuadratic {
  Rat u;
  Rat v;

  Rat operator()(const Rat& x) const { return x * x + u * x + v; }
  Rat discriminant() const { return u * u - 4 * v; }
  bool is_square() const { return sgn(discriminant()) == 0; }
  bool operator==(const MonicQuadratic& o) const = default;
  /// Lexicographic on (u, v).
  bool operator<(const MonicQuadratic& o) const;
  std::string str() const;
};

/// Diagonal quadratic form sum_j coeffs[j] * x_j^2 over x_0..x_n.
struct DiagonalForm {
  std::vector<Rat> coeffs;
  Rat evaluate(const std::vector<Rat>& point) const;
};

/// One form per i = 3..n, written as (right side) - δ_2 x_i^2 = 0.
std::vector<DiagonalForm> surface_equations(const BuchiSurface& s);

/// Throws DomainError on an arity mismatch.
bool contains(const BuchiSurface& s, const ProjectivePoint& p);

struct TrivialLineMembership {
  /// signs[k] multiplies x_{k+1}: signs[0] x_1 = signs[i-1] x_i - δ_i x_0.
  std::vector<int> signs;
  /// Common value ν = signs[0] x_1 / x_0; absent on the hyperplane x_0 = 0.
  std::optional<Rat> nu;
};

/// Membership in one of the lines ±x_1 = ±x_2 - δ_2 x_0 = ... = ±x_n - δ_n x_0.
std::optional<TrivialLineMembership> trivial_line_member(const BuchiSurface& s,
                                                         const ProjectivePoint& p);

/// Exact rank of the Jacobian of the defining forms at p; throws
/// DomainError when p is not on the surface.
std::size_t jacobian_rank(const BuchiSurface& s, const ProjectivePoint& p);

/// [1 : sqrt f(a_1) : ... : sqrt f(a_n)] with nonnegative roots; throws
/// DomainError when some f(a_i) is not a rational square.
ProjectivePoint j_of_f(const EvaluationNodes& nodes, const MonicQuadratic& f);

/// Unique monic quadratic with f(a_1) = b_1^2 and f(a_2) = b_2^2 for the
/// point [1 : b_1 : ... : b_n]; throws DomainError when x_0 = 0.
MonicQuadratic f_of_point(const EvaluationNodes& nodes, const ProjectivePoint& p);

/// (f is a square, j(f) lies on a trivial line). The two always agree.
std::pair<bool, bool> square_iff_trivial(const EvaluationNodes& nodes, const MonicQuadratic& f);

struct ScanOptions {
  bool integers_only = false;
  unsigned threads = 1;
};

struct ScanReport {
  /// Non-square f of height <= H with every f(a_i) a rational square,
  /// sorted by (u, v). These are candidates only; the scan has no bound on
  /// the full exceptional set.
  std::vector<MonicQuadratic> candidates;
  /// growth[h-1] = number of candidates of height <= h.
  std::vector<std::size_t> growth;
  std::size_t examined = 0;
};

ScanReport scan_exceptional(const EvaluationNodes& nodes, unsigned long height,
                            const ScanOptions& options = {});

/// All rationals of height <= h in increasing order (integers only when
/// requested).
std::vector<Rat> rationals_of_height(unsigned long h, bool integers_only);

struct CounterexampleFamily {
  MonicQuadratic f;
  std::vector<Int> nodes;
  std::vector<Int> roots;
};

/// f_N = x^2 - 4 (2N)!, a_i = i! + (2N)!/i!, r_i = |i! - (2N)!/i!|, with
/// f_N(a_i) = r_i^2 and strict decrease of a_i checked exactly.
CounterexampleFamily counterexample_family(unsigned long big_n);

/// c^2 x_2^2 + c(c-δ)(δ^2 - x_1^2 - x_2^2) + (c-δ)^2 x_1^2
///   = δ (δ c (c-δ) - (c-δ) x_1^2 + c x_2^2)
/// as a polynomial identity in c, δ, x_1, x_2.
bool conic_integrality_identity();

/// On x_1 = x_2 - δ the coefficient sum 2 x_1 x_2 + (δ^2 - x_1^2 - x_2^2)
/// vanishes identically.
bool trivial_line_vanishing_identity();

}  // namespace buchi
