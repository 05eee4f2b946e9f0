#pragma once

// Exact p-adic Nevanlinna calculus for polynomials and rational functions
// over Q.
//
// Radii are written r = p^rho with rho rational and every logarithm is taken
// base p, so each quantity below is an exact rational:
//   log |h|_r       = max_k ( -v_p(a_k) + k rho )
//   n(r, h, 0)      = zeros of h with |z|_p <= r, with multiplicity
//   N(r, h, 0)      = n(0) rho + sum over nonzero roots c of max(0, rho + v_p(c))
//   m(r, f, a)      = max(0, -log |f - a|_r),   m(r, f, inf) = max(0, log |f|_r)
// N is the literal integral definition, including the n(0) log r term; it
// is negative for rho < 0 when h vanishes at the origin.

#include "buchi/exact.hpp"
#include "buchi/ratfunc.hpp"
#include "buchi/upoly.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace buchi {

class PadicContext {
 public:
  /// Throws DomainError when p is not prime.
  explicit PadicContext(unsigned long p);
  unsigned long p() const { return p_; }

 private:
  unsigned long p_;
};

/// r = p^rho.
struct LogRadius {
  Rat rho;
};

/// One edge of the Newton polygon of the nonzero roots. All roots attached
/// to the edge have p-adic valuation root_valuation (the negated geometric
/// slope of the lower hull of {(k, v_p(a_k))}).
struct NewtonSegment {
  Rat root_valuation;
  unsigned long length;
  bool operator==(const NewtonSegment&) const = default;
};

/// Edges in strictly increasing order of root valuation.
struct NewtonPolygon {
  std::vector<NewtonSegment> segments;
  unsigned long total_length() const;
};

/// Throws DomainError for the zero polynomial.
Rat gauss_log_norm(const UPoly& h, const PadicContext& ctx, const LogRadius& rho);
/// log |num|_r - log |den|_r; throws DomainError for the zero function.
Rat gauss_log_norm(const RatFunc& f, const PadicContext& ctx, const LogRadius& rho);

/// Newton polygon of the nonzero roots (the root at the origin is split off
/// first). Throws DomainError for the zero polynomial.
NewtonPolygon newton_polygon(const UPoly& h, const PadicContext& ctx);

/// n(r, h, 0).
unsigned long count_zeros(const UPoly& h, const PadicContext& ctx, const LogRadius& rho);

/// N(r, h, 0).
Rat counting_N(const UPoly& h, const PadicContext& ctx, const LogRadius& rho);

struct Infinity {};
/// 0 is expressed as Rat(0).
using Target = std::variant<Infinity, Rat>;

/// N(r, f, a) = N(r, numerator(f - a), 0); N(r, f, inf) = N(r, den f, 0).
/// Throws DomainError when f - a is identically zero.
Rat height_N(const RatFunc& f, const Target& target, const PadicContext& ctx, const LogRadius& rho);

/// m(r, f, a) or m(r, f, inf). Throws DomainError when f = a identically.
Rat prox_m(const RatFunc& f, const Target& target, const PadicContext& ctx, const LogRadius& rho);

/// Values of rho at which some log norm or counting function used for f
/// changes slope: -v_p of every nonzero root of num f and den f.
std::vector<Rat> breakpoints(const RatFunc& f, const PadicContext& ctx);

struct PjfResult {
  /// Common value of log|f|_r - N(r,f,0) + N(r,f,inf) when it is constant.
  std::optional<Rat> constant;
  /// First radius whose value disagrees with the first radius.
  std::optional<Rat> offending_rho;
  std::vector<Rat> values;
};

/// Requires f != 0 and at least two radii.
PjfResult check_pjf(const RatFunc& f, const PadicContext& ctx, const std::vector<Rat>& rhos);

/// |f^(n) / f|_r <= r^-n, i.e. log|f^(n)/f|_r <= -n rho. True when f^(n) = 0.
bool check_ldl(const RatFunc& f, unsigned n, const PadicContext& ctx, const LogRadius& rho);

struct GridReport {
  std::vector<Rat> rhos;
  std::vector<Rat> values;
  Rat min;
  Rat max;
  Rat spread;
  /// Beyond this radius every quantity is affine in rho.
  Rat stable_from;
  /// Number of grid radii >= stable_from.
  std::size_t tail_points = 0;
  bool pass = false;
};

/// Defect m(a) + N(a) - m(inf) - N(inf) over the grid. Passes when the grid
/// reaches the stable region and the defect is constant there.
GridReport check_fmt(const RatFunc& f, const Rat& a, const PadicContext& ctx, const std::vector<Rat>& rhos);

/// sum_i m(r, f, a_i) - N(r, f, inf) over the grid. Passes when the grid
/// reaches the stable region and the value does not increase there. This is
/// a finite-grid spot check; the underlying bound is not effective.
GridReport check_smt(const RatFunc& f, const std::vector<Rat>& targets, const PadicContext& ctx,
                     const std::vector<Rat>& rhos);

/// With g = (a + f)^2 - u^2 and h = u, checks g'^2 - 4 f'^2 g = 4 h Δ_h where
/// Δ_h = h f'^2 - h'^2 h - h' g'.
bool delta_identity(const RatFunc& f, const RatFunc& u, const Rat& a);

/// h_i^2 - h_j^2 = (a_i - a_j)(2 f + a_i + a_j).
bool difference_identity(const RatFunc& f, const Rat& a_i, const Rat& a_j, const RatFunc& h_i_sq,
                         const RatFunc& h_j_sq);

/// (a + f)^2 - g.
RatFunc shifted_square_minus(const RatFunc& f, const Rat& a, const RatFunc& g);

}  // namespace buchi
