#include "buchi/nevanlinna.hpp"

#include <algorithm>
#include <set>

namespace buchi {

PadicContext::PadicContext(unsigned long p) : p_(p) {
  if (!is_prime(p)) throw DomainError("p must be prime, got " + std::to_string(p));
}

unsigned long NewtonPolygon::total_length() const {
  unsigned long total = 0;
  for (const auto& s : segments) total += s.length;
  return total;
}

namespace {

Rat positive_part(const Rat& x) { return sgn(x) > 0 ? x : Rat(0); }

void require_nonzero(const UPoly& h) {
  if (h.is_zero()) throw DomainError("zero polynomial");
}

// Numerator of f - a, or the denominator of f for the target at infinity.
UPoly target_polynomial(const RatFunc& f, const Target& target) {
  if (std::holds_alternative<Infinity>(target)) return f.den();
  RatFunc shifted = f - RatFunc::constant(std::get<Rat>(target));
  if (shifted.is_zero()) throw DomainError("f equals the target identically");
  return shifted.num();
}

}  // namespace

Rat gauss_log_norm(const UPoly& h, const PadicContext& ctx, const LogRadius& rho) {
  require_nonzero(h);
  std::optional<Rat> best;
  for (std::size_t k = 0; k < h.coeffs().size(); ++k) {
    const Rat& a = h.coeffs()[k];
    if (sgn(a) == 0) continue;
    Rat term = Rat(-vp(a, ctx.p()).value()) + rho.rho * static_cast<unsigned long>(k);
    if (!best || term > *best) best = term;
  }
  return *best;
}

Rat gauss_log_norm(const RatFunc& f, const PadicContext& ctx, const LogRadius& rho) {
  if (f.is_zero()) throw DomainError("Gauss norm of the zero function");
  return gauss_log_norm(f.num(), ctx, rho) - gauss_log_norm(f.den(), ctx, rho);
}

NewtonPolygon newton_polygon(const UPoly& h, const PadicContext& ctx) {
  require_nonzero(h);
  struct Pt {
    long x;
    long y;
  };
  std::vector<Pt> pts;
  for (std::size_t k = h.order_at_zero(); k < h.coeffs().size(); ++k) {
    const Rat& a = h.coeffs()[k];
    if (sgn(a) != 0) pts.push_back({static_cast<long>(k), vp(a, ctx.p()).value()});
  }
  // Lower convex hull, left to right; collinear interior points dropped.
  std::vector<Pt> hull;
  for (const Pt& p : pts) {
    while (hull.size() >= 2) {
      const Pt& o = hull[hull.size() - 2];
      const Pt& a = hull.back();
      __int128 cross = static_cast<__int128>(a.x - o.x) * (p.y - o.y) -
                       static_cast<__int128>(a.y - o.y) * (p.x - o.x);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  NewtonPolygon poly;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const long dx = hull[i].x - hull[i - 1].x;
    Rat slope(Int(hull[i].y - hull[i - 1].y), Int(dx));
    slope.canonicalize();
    poly.segments.push_back({Rat(-slope), static_cast<unsigned long>(dx)});
  }
  // Geometric slopes increase left to right, so root valuations decrease.
  std::reverse(poly.segments.begin(), poly.segments.end());
  return poly;
}

unsigned long count_zeros(const UPoly& h, const PadicContext& ctx, const LogRadius& rho) {
  require_nonzero(h);
  unsigned long count = h.order_at_zero();
  for (const auto& s : newton_polygon(h, ctx).segments) {
    if (s.root_valuation >= -rho.rho) count += s.length;
  }
  return count;
}

Rat counting_N(const UPoly& h, const PadicContext& ctx, const LogRadius& rho) {
  require_nonzero(h);
  Rat total = rho.rho * static_cast<unsigned long>(h.order_at_zero());
  for (const auto& s : newton_polygon(h, ctx).segments) {
    total += positive_part(rho.rho + s.root_valuation) * s.length;
  }
  return total;
}

Rat height_N(const RatFunc& f, const Target& target, const PadicContext& ctx, const LogRadius& rho) {
  if (f.is_zero()) throw DomainError("counting function of the zero function");
  return counting_N(target_polynomial(f, target), ctx, rho);
}

Rat prox_m(const RatFunc& f, const Target& target, const PadicContext& ctx, const LogRadius& rho) {
  if (std::holds_alternative<Infinity>(target)) {
    if (f.is_zero()) throw DomainError("proximity of the zero function to infinity");
    return positive_part(gauss_log_norm(f, ctx, rho));
  }
  RatFunc shifted = f - RatFunc::constant(std::get<Rat>(target));
  if (shifted.is_zero()) throw DomainError("f equals the target identically");
  return positive_part(-gauss_log_norm(shifted, ctx, rho));
}

std::vector<Rat> breakpoints(const RatFunc& f, const PadicContext& ctx) {
  std::set<Rat> out;
  for (const UPoly* h : {&f.num(), &f.den()}) {
    if (h->is_zero()) continue;
    for (const auto& s : newton_polygon(*h, ctx).segments) out.insert(-s.root_valuation);
  }
  return {out.begin(), out.end()};
}

PjfResult check_pjf(const RatFunc& f, const PadicContext& ctx, const std::vector<Rat>& rhos) {
  if (f.is_zero()) throw DomainError("Poisson-Jensen check of the zero function");
  if (rhos.size() < 2) throw DomainError("Poisson-Jensen check needs at least two radii");
  PjfResult result;
  for (const auto& rho : rhos) {
    LogRadius r{rho};
    result.values.push_back(gauss_log_norm(f, ctx, r) - counting_N(f.num(), ctx, r) +
                            counting_N(f.den(), ctx, r));
  }
  for (std::size_t i = 1; i < rhos.size(); ++i) {
    if (result.values[i] != result.values[0]) {
      result.offending_rho = rhos[i];
      return result;
    }
  }
  result.constant = result.values[0];
  return result;
}

bool check_ldl(const RatFunc& f, unsigned n, const PadicContext& ctx, const LogRadius& rho) {
  if (f.is_zero()) throw DomainError("logarithmic derivative of the zero function");
  const RatFunc d = f.derivative(n);
  if (d.is_zero()) return true;
  return gauss_log_norm(d / f, ctx, rho) <= -rho.rho * n;
}

namespace {

// Radius past which every log norm and counting function of the given
// functions is affine in rho, including the kink of max(0, log|g|). Empty
// when everything is affine on the whole line.
std::optional<Rat> stable_radius(const std::vector<RatFunc>& fs, const PadicContext& ctx) {
  std::optional<Rat> edge;
  for (const auto& g : fs) {
    for (const auto& b : breakpoints(g, ctx)) {
      if (!edge || b > *edge) edge = b;
    }
  }
  const Rat base = edge.value_or(Rat(0));
  std::optional<Rat> out = edge;
  for (const auto& g : fs) {
    const long slope = g.num().degree() - g.den().degree();
    if (slope == 0) continue;
    const Rat crossing = base - gauss_log_norm(g, ctx, LogRadius{base}) / slope;
    // Without breakpoints the affine form is exact everywhere.
    if (edge && crossing <= base) continue;
    if (!out || crossing > *out) out = crossing;
  }
  return out;
}

GridReport summarize(std::vector<Rat> rhos, std::vector<Rat> values, Rat stable_from) {
  GridReport r;
  r.rhos = std::move(rhos);
  r.values = std::move(values);
  r.min = *std::min_element(r.values.begin(), r.values.end());
  r.max = *std::max_element(r.values.begin(), r.values.end());
  r.spread = r.max - r.min;
  r.stable_from = std::move(stable_from);
  return r;
}

std::vector<Rat> sorted_grid(std::vector<Rat> rhos) {
  if (rhos.empty()) throw DomainError("empty radius grid");
  std::sort(rhos.begin(), rhos.end());
  rhos.erase(std::unique(rhos.begin(), rhos.end()), rhos.end());
  return rhos;
}

}  // namespace

GridReport check_fmt(const RatFunc& f, const Rat& a, const PadicContext& ctx, const std::vector<Rat>& raw) {
  if (f.is_constant()) throw DomainError("first main theorem check needs a non-constant function");
  const std::vector<Rat> rhos = sorted_grid(raw);
  std::vector<Rat> values;
  for (const auto& rho : rhos) {
    LogRadius r{rho};
    values.push_back(prox_m(f, a, ctx, r) + height_N(f, a, ctx, r) - prox_m(f, Infinity{}, ctx, r) -
                     height_N(f, Infinity{}, ctx, r));
  }
  const Rat stable = stable_radius({f, f - RatFunc::constant(a)}, ctx).value_or(rhos.front());
  GridReport report = summarize(rhos, std::move(values), stable);
  std::optional<Rat> tail_value;
  bool constant_tail = true;
  for (std::size_t i = 0; i < report.rhos.size(); ++i) {
    if (report.rhos[i] < stable) continue;
    ++report.tail_points;
    if (tail_value && *tail_value != report.values[i]) constant_tail = false;
    tail_value = report.values[i];
  }
  report.pass = report.tail_points >= 2 && constant_tail;
  return report;
}

GridReport check_smt(const RatFunc& f, const std::vector<Rat>& targets, const PadicContext& ctx,
                     const std::vector<Rat>& raw) {
  if (f.is_constant()) throw DomainError("second main theorem check needs a non-constant function");
  if (std::set<Rat>(targets.begin(), targets.end()).size() != targets.size()) {
    throw DomainError("second main theorem targets must be distinct");
  }
  const std::vector<Rat> rhos = sorted_grid(raw);
  std::vector<RatFunc> involved{f};
  for (const auto& a : targets) involved.push_back(f - RatFunc::constant(a));
  std::vector<Rat> values;
  for (const auto& rho : rhos) {
    LogRadius r{rho};
    Rat total = -height_N(f, Infinity{}, ctx, r);
    for (const auto& a : targets) total += prox_m(f, a, ctx, r);
    values.push_back(total);
  }
  GridReport report = summarize(rhos, std::move(values), stable_radius(involved, ctx).value_or(rhos.front()));
  std::optional<Rat> prev;
  bool non_increasing = true;
  for (std::size_t i = 0; i < report.rhos.size(); ++i) {
    if (report.rhos[i] < report.stable_from) continue;
    ++report.tail_points;
    if (prev && report.values[i] > *prev) non_increasing = false;
    prev = report.values[i];
  }
  report.pass = report.tail_points >= 2 && non_increasing;
  return report;
}

RatFunc shifted_square_minus(const RatFunc& f, const Rat& a, const RatFunc& g) {
  return (RatFunc::constant(a) + f).pow(2) - g;
}

bool delta_identity(const RatFunc& f, const RatFunc& u, const Rat& a) {
  const RatFunc g = shifted_square_minus(f, a, u.pow(2));
  const RatFunc& h = u;
  const RatFunc df = f.derivative();
  const RatFunc dg = g.derivative();
  const RatFunc dh = h.derivative();
  const RatFunc delta = dg * dg - RatFunc::constant(4) * df * df * g;
  const RatFunc delta_h = h * df * df - dh * dh * h - dh * dg;
  return delta == RatFunc::constant(4) * h * delta_h;
}

bool difference_identity(const RatFunc& f, const Rat& a_i, const Rat& a_j, const RatFunc& h_i_sq,
                         const RatFunc& h_j_sq) {
  const RatFunc rhs = RatFunc::constant(a_i - a_j) * (RatFunc::constant(2) * f + RatFunc::constant(a_i + a_j));
  return h_i_sq - h_j_sq == rhs;
}

}  // namespace buchi
