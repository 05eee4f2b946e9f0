#include "buchi/surfaces.hpp"

#include "buchi/mpoly.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace buchi {

EvaluationNodes::EvaluationNodes(std::vector<Rat> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw DomainError("at least two evaluation nodes are required");
  std::set<Rat> seen(nodes_.begin(), nodes_.end());
  if (seen.size() != nodes_.size()) throw DomainError("evaluation nodes must be pairwise distinct");
}

std::vector<Rat> EvaluationNodes::deltas() const {
  std::vector<Rat> out;
  for (std::size_t i = 1; i < nodes_.size(); ++i) out.emplace_back(nodes_[i] - nodes_[0]);
  return out;
}

BuchiSurface::BuchiSurface(std::vector<Rat> deltas) : deltas_(std::move(deltas)) {
  if (deltas_.empty()) throw DomainError("a surface needs at least δ_2");
  std::set<Rat> seen;
  for (const auto& d : deltas_) {
    if (sgn(d) == 0) throw DomainError("deltas must be nonzero");
    if (!seen.insert(d).second) throw DomainError("deltas must be pairwise distinct");
  }
}

ProjectivePoint::ProjectivePoint(std::vector<Rat> coords) : coords_(std::move(coords)) {
  auto first = std::find_if(coords_.begin(), coords_.end(), [](const Rat& c) { return sgn(c) != 0; });
  if (first == coords_.end()) throw DomainError("projective point with all coordinates zero");
  const Rat scale = 1 / *first;
  for (auto& c : coords_) c *= scale;
}

bool MonicQuadratic::operator<(const MonicQuadratic& o) const {
  if (u != o.u) return u < o.u;
  return v < o.v;
}

std::string MonicQuadratic::str() const {
  std::ostringstream out;
  out << "x^2";
  if (sgn(u) != 0) out << (sgn(u) < 0 ? " - " : " + ") << Rat(abs(u)).get_str() << "*x";
  if (sgn(v) != 0) out << (sgn(v) < 0 ? " - " : " + ") << Rat(abs(v)).get_str();
  return out.str();
}

Rat DiagonalForm::evaluate(const std::vector<Rat>& point) const {
  Rat acc = 0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) acc += coeffs[j] * point[j] * point[j];
  return acc;
}

std::vector<DiagonalForm> surface_equations(const BuchiSurface& s) {
  const std::size_t n = s.n();
  const Rat& d2 = s.delta(2);
  std::vector<DiagonalForm> out;
  for (std::size_t i = 3; i <= n; ++i) {
    const Rat& di = s.delta(i);
    DiagonalForm form{std::vector<Rat>(n + 1)};
    form.coeffs[0] = di * d2 * (di - d2);
    form.coeffs[1] = -(di - d2);
    form.coeffs[2] = di;
    form.coeffs[i] = -d2;
    out.push_back(std::move(form));
  }
  return out;
}

namespace {

void check_arity(const BuchiSurface& s, const ProjectivePoint& p) {
  if (p.dimension() != s.n()) {
    throw DomainError("point has " + std::to_string(p.coords().size()) + " coordinates, surface lives in P^" +
                      std::to_string(s.n()));
  }
}

std::size_t rank_of(std::vector<std::vector<Rat>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && sgn(rows[pivot][c]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (sgn(rows[r][c]) == 0) continue;
      Rat factor = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= factor * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

bool contains(const BuchiSurface& s, const ProjectivePoint& p) {
  check_arity(s, p);
  for (const auto& form : surface_equations(s)) {
    if (sgn(form.evaluate(p.coords())) != 0) return false;
  }
  return true;
}

std::optional<TrivialLineMembership> trivial_line_member(const BuchiSurface& s,
                                                         const ProjectivePoint& p) {
  check_arity(s, p);
  const auto& x = p.coords();
  for (int first_sign : {1, -1}) {
    const Rat common = first_sign * x[1];
    TrivialLineMembership m{{first_sign}, std::nullopt};
    bool ok = true;
    for (std::size_t i = 2; i <= s.n() && ok; ++i) {
      // signs[i-1] x_i = common + δ_i x_0
      Rat target = common + s.delta(i) * x[0];
      if (x[i] == target) {
        m.signs.push_back(1);
      } else if (x[i] == -target) {
        m.signs.push_back(-1);
      } else {
        ok = false;
      }
    }
    if (!ok) continue;
    if (sgn(x[0]) != 0) m.nu = common / x[0];
    return m;
  }
  return std::nullopt;
}

std::size_t jacobian_rank(const BuchiSurface& s, const ProjectivePoint& p) {
  if (!contains(s, p)) throw DomainError("point is not on the surface");
  std::vector<std::vector<Rat>> rows;
  for (const auto& form : surface_equations(s)) {
    std::vector<Rat> row(form.coeffs.size());
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = 2 * form.coeffs[j] * p.coords()[j];
    rows.push_back(std::move(row));
  }
  return rank_of(std::move(rows));
}

ProjectivePoint j_of_f(const EvaluationNodes& nodes, const MonicQuadratic& f) {
  std::vector<Rat> coords{Rat(1)};
  for (const auto& a : nodes.values()) {
    Rat value = f(a);
    auto root = is_square_rat(value);
    if (!root) throw DomainError("f(" + a.get_str() + ") = " + value.get_str() + " is not a rational square");
    coords.push_back(*root);
  }
  return ProjectivePoint(std::move(coords));
}

MonicQuadratic f_of_point(const EvaluationNodes& nodes, const ProjectivePoint& p) {
  const auto& x = p.coords();
  if (x.size() != nodes.size() + 1) throw DomainError("point arity does not match the nodes");
  if (sgn(x[0]) == 0) throw DomainError("point lies on the hyperplane x_0 = 0");
  const Rat& a1 = nodes.values()[0];
  const Rat& a2 = nodes.values()[1];
  const Rat b1_sq = x[1] * x[1];
  const Rat b2_sq = x[2] * x[2];
  const Rat span = a2 - a1;
  MonicQuadratic f;
  f.u = (b2_sq - b1_sq - a2 * a2 + a1 * a1) / span;
  f.v = (a1 * a2 * span - a1 * b2_sq + a2 * b1_sq) / span;
  return f;
}

std::pair<bool, bool> square_iff_trivial(const EvaluationNodes& nodes, const MonicQuadratic& f) {
  const ProjectivePoint p = j_of_f(nodes, f);
  const BuchiSurface s = BuchiSurface::from_nodes(nodes);
  return {f.is_square(), trivial_line_member(s, p).has_value()};
}

std::vector<Rat> rationals_of_height(unsigned long h, bool integers_only) {
  std::vector<Rat> out;
  const long hh = static_cast<long>(h);
  const long max_den = integers_only ? 1 : hh;
  for (long den = 1; den <= max_den; ++den) {
    for (long num = -hh; num <= hh; ++num) {
      if (std::gcd(num < 0 ? -num : num, den) != 1) continue;
      out.emplace_back(Int(num), Int(den));
    }
  }
  // gcd(0, den) = den, so zero only comes from den = 1.
  std::sort(out.begin(), out.end());
  return out;
}

ScanReport scan_exceptional(const EvaluationNodes& nodes, unsigned long height, const ScanOptions& options) {
  if (height == 0) throw DomainError("scan height must be positive");
  const std::vector<Rat> values = rationals_of_height(height, options.integers_only);
  const unsigned threads = std::max(1U, options.threads);
  std::vector<std::vector<MonicQuadratic>> partial(threads);

  auto all_squares = [&](const MonicQuadratic& f) {
    for (const auto& a : nodes.values()) {
      if (!is_square_rat(f(a))) return false;
    }
    return true;
  };
  auto worker = [&](unsigned id) {
    for (std::size_t iu = id; iu < values.size(); iu += threads) {
      for (const auto& v : values) {
        MonicQuadratic f{values[iu], v};
        if (!f.is_square() && all_squares(f)) partial[id].push_back(f);
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

  ScanReport report;
  report.examined = values.size() * values.size();
  for (auto& part : partial) {
    report.candidates.insert(report.candidates.end(), part.begin(), part.end());
  }
  std::sort(report.candidates.begin(), report.candidates.end());
  report.growth.assign(height, 0);
  for (const auto& f : report.candidates) {
    const Int hu = buchi::height(f.u);
    const Int hv = buchi::height(f.v);
    const unsigned long h = (hu > hv ? hu : hv).get_ui();
    for (unsigned long k = h; k <= height; ++k) ++report.growth[k - 1];
  }
  return report;
}

CounterexampleFamily counterexample_family(unsigned long big_n) {
  if (big_n == 0) throw DomainError("family index N must be positive");
  const Int big = factorial(2 * big_n);
  CounterexampleFamily fam;
  fam.f = MonicQuadratic{Rat(0), Rat(-4 * big)};
  for (unsigned long i = 1; i <= big_n; ++i) {
    const Int fi = factorial(i);
    const Int co = big / fi;
    fam.nodes.push_back(fi + co);
    fam.roots.push_back(abs(Int(fi - co)));
  }
  for (std::size_t i = 0; i < fam.nodes.size(); ++i) {
    if (fam.f(Rat(fam.nodes[i])) != Rat(fam.roots[i] * fam.roots[i])) {
      throw std::logic_error("f_N(a_i) is not the expected square");
    }
    if (i > 0 && !(fam.nodes[i] < fam.nodes[i - 1])) {
      throw std::logic_error("family nodes are not strictly decreasing");
    }
  }
  return fam;
}

bool conic_integrality_identity() {
  const std::vector<std::string> vars{"c", "d", "x1", "x2"};
  const MPoly c = MPoly::variable(vars, "c");
  const MPoly d = MPoly::variable(vars, "d");
  const MPoly x1 = MPoly::variable(vars, "x1");
  const MPoly x2 = MPoly::variable(vars, "x2");
  const MPoly c_minus_d = c - d;
  const MPoly lhs = c.pow(2) * x2.pow(2) + c * c_minus_d * (d.pow(2) - x1.pow(2) - x2.pow(2)) +
                    c_minus_d.pow(2) * x1.pow(2);
  const MPoly rhs = d * (d * c * c_minus_d - c_minus_d * x1.pow(2) + c * x2.pow(2));
  return mpoly_identity_equal(lhs, rhs);
}

bool trivial_line_vanishing_identity() {
  const std::vector<std::string> vars{"d", "x1", "x2"};
  const MPoly d = MPoly::variable(vars, "d");
  const MPoly x1 = MPoly::variable(vars, "x1");
  const MPoly x2 = MPoly::variable(vars, "x2");
  // dx_1 = dx_2 on the line, so ω collapses to the sum of its three coefficients.
  const MPoly omega = x1 * x2 * Rat(2) + (d.pow(2) - x1.pow(2) - x2.pow(2));
  const MPoly on_line = omega.substitute("x1", x2 - d);
  return mpoly_identity_equal(on_line, MPoly(vars));
}

}  // namespace buchi
