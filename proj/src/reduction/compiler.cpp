#include "buchi/reduction/compiler.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace buchi::reduction {

// ---------------------------------------------------------------- Affine

std::optional<std::string> Affine::as_variable() const {
  if (constant != 0 || coeffs.size() != 1 || coeffs.begin()->second != 1) return std::nullopt;
  return coeffs.begin()->first;
}

Int Affine::evaluate(const Witness& w) const {
  Int out = constant;
  for (const auto& [v, c] : coeffs) {
    auto it = w.find(v);
    if (it == w.end()) throw DomainError("witness has no value for '" + v + "'");
    out += c * it->second;
  }
  return out;
}

Affine& Affine::operator+=(const Affine& o) {
  for (const auto& [v, c] : o.coeffs) {
    Int& slot = coeffs[v];
    slot += c;
    if (slot == 0) coeffs.erase(v);
  }
  constant += o.constant;
  return *this;
}

Affine& Affine::operator-=(const Affine& o) {
  Affine neg = o;
  neg *= Int(-1);
  return *this += neg;
}

Affine& Affine::operator*=(const Int& c) {
  if (c == 0) {
    coeffs.clear();
    constant = 0;
    return *this;
  }
  for (auto& entry : coeffs) entry.second *= c;
  constant *= c;
  return *this;
}

Affine Affine::variable(const std::string& name) {
  Affine a;
  a.coeffs[name] = 1;
  return a;
}

Affine Affine::constant_of(const Int& c) {
  Affine a;
  a.constant = c;
  return a;
}

std::string Affine::str() const {
  std::string out;
  auto append = [&](const Int& c, const std::string& var) {
    const Int mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (var.empty()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += var;
    }
  };
  for (const auto& [v, c] : coeffs) append(c, v);
  if (constant != 0 || out.empty()) append(constant, "");
  return out;
}

std::string NameSupply::fresh(const std::string& prefix) {
  return prefix + std::to_string(++counters_[prefix]);
}

// ---------------------------------------------------------------- lowering

std::size_t TACProgram::multiplications() const {
  return static_cast<std::size_t>(
      std::count_if(instrs.begin(), instrs.end(), [](const TacInstr& i) { return i.kind == TacInstr::Kind::Mul; }));
}

std::string TACProgram::str() const {
  std::string out;
  for (const auto& in : instrs) {
    out += in.dest + " := ";
    out += in.kind == TacInstr::Kind::Mul ? in.lhs + " * " + in.rhs : in.value.str();
    out += "\n";
  }
  for (const auto& c : constraints) out += c.str() + " = 0\n";
  return out;
}

namespace {

class Lowering {
 public:
  Lowering(TACProgram& prog, NameSupply& names) : prog_(prog), names_(names) {}

  Affine lower(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Number: return Affine::constant_of(e.value);
      case Expr::Kind::Variable: return Affine::variable(e.name);
      case Expr::Kind::Neg: return lower(*e.lhs) * Int(-1);
      case Expr::Kind::Add: return lower(*e.lhs) + lower(*e.rhs);
      case Expr::Kind::Sub: return lower(*e.lhs) - lower(*e.rhs);
      case Expr::Kind::Mul: {
        Affine l = lower(*e.lhs);
        return multiply(l, lower(*e.rhs));
      }
      case Expr::Kind::Pow: return power(lower(*e.lhs), e.exponent);
      case Expr::Kind::Div: break;
    }
    throw SyntaxError("division is not allowed in equation systems", e.pos);
  }

 private:
  Affine multiply(const Affine& a, const Affine& b) {
    if (a.is_constant()) return b * a.constant;
    if (b.is_constant()) return a * b.constant;
    std::string x = materialize(a);
    std::string y = materialize(b);
    if (y < x) std::swap(x, y);
    auto key = std::make_pair(x, y);
    if (auto it = products_.find(key); it != products_.end()) return Affine::variable(it->second);
    TacInstr in{TacInstr::Kind::Mul, fresh(), {}, x, y};
    products_.emplace(key, in.dest);
    prog_.instrs.push_back(in);
    return Affine::variable(in.dest);
  }

  // Square-and-multiply, so x^n costs O(log n) products.
  Affine power(const Affine& base, unsigned n) {
    if (n == 0) return Affine::constant_of(1);
    if (n == 1) return base;
    const Affine half = power(base, n / 2);
    const Affine sq = multiply(half, half);
    return n % 2 == 1 ? multiply(sq, base) : sq;
  }

  std::string materialize(const Affine& a) {
    if (auto v = a.as_variable()) return *v;
    const std::string key = a.str();
    if (auto it = defined_.find(key); it != defined_.end()) return it->second;
    TacInstr in{TacInstr::Kind::Linear, fresh(), a, {}, {}};
    defined_.emplace(key, in.dest);
    prog_.instrs.push_back(in);
    return in.dest;
  }

  std::string fresh() {
    std::string name = names_.fresh("_t");
    prog_.temporaries.push_back(name);
    return name;
  }

  TACProgram& prog_;
  NameSupply& names_;
  std::map<std::pair<std::string, std::string>, std::string> products_;
  std::map<std::string, std::string> defined_;
};

}  // namespace

TACProgram lower_tac(const SourceSystem& sys, NameSupply& names) {
  TACProgram prog;
  prog.source_vars = sys.variables;
  Lowering lowering(prog, names);
  for (const auto& eq : sys.equations) {
    Affine lhs = lowering.lower(*eq.lhs);
    Affine c = lhs - lowering.lower(*eq.rhs);
    if (c.is_constant() && c.constant == 0) continue;
    prog.constraints.push_back(std::move(c));
  }
  return prog;
}

// ---------------------------------------------------------------- elimination

std::vector<Squaring> IntermediateSystem::squarings() const {
  std::vector<Squaring> out;
  for (const auto& d : schedule) {
    if (d.kind == Definition::Kind::Square) out.push_back({d.dest, d.t});
  }
  return out;
}

std::vector<Affine> IntermediateSystem::linear() const {
  std::vector<Affine> out = constraints;
  for (const auto& d : schedule) {
    switch (d.kind) {
      case Definition::Kind::Linear: out.push_back(Affine::variable(d.dest) - d.value); break;
      case Definition::Kind::Half:
        out.push_back(Affine::variable(d.q_s) - Affine::variable(d.q_a) - Affine::variable(d.q_b) -
                      Affine::variable(d.dest) * Int(2));
        break;
      case Definition::Kind::Square: break;
    }
  }
  return out;
}

IntermediateSystem eliminate_mul(const TACProgram& prog, NameSupply& names) {
  IntermediateSystem out;
  out.program = prog;
  out.vars = prog.source_vars;
  out.vars.insert(out.vars.end(), prog.temporaries.begin(), prog.temporaries.end());
  out.constraints = prog.constraints;

  std::map<std::string, std::string> square_of;
  auto fresh = [&] {
    std::string name = names.fresh("_t");
    out.temporaries.push_back(name);
    out.vars.push_back(name);
    return name;
  };
  auto add_square = [&](const std::string& q, const std::string& t) {
    Definition d{Definition::Kind::Square, q, {}, t, {}, {}, {}};
    out.schedule.push_back(d);
    square_of.emplace(t, q);
  };
  auto square = [&](const std::string& t) {
    if (auto it = square_of.find(t); it != square_of.end()) return it->second;
    std::string q = fresh();
    add_square(q, t);
    return q;
  };

  for (const auto& in : prog.instrs) {
    if (in.kind == TacInstr::Kind::Linear) {
      out.schedule.push_back({Definition::Kind::Linear, in.dest, in.value, {}, {}, {}, {}});
      continue;
    }
    MulElimination rec;
    rec.dest = in.dest;
    rec.lhs = in.lhs;
    rec.rhs = in.rhs;
    if (in.lhs == in.rhs) {
      // a*a: the product itself is the square of a.
      rec.is_square = true;
      if (auto it = square_of.find(in.lhs); it != square_of.end()) {
        rec.q_lhs = it->second;
        out.schedule.push_back(
            {Definition::Kind::Linear, in.dest, Affine::variable(it->second), {}, {}, {}, {}});
      } else {
        rec.q_lhs = in.dest;
        add_square(in.dest, in.lhs);
      }
    } else {
      rec.s = fresh();
      out.schedule.push_back({Definition::Kind::Linear, rec.s,
                              Affine::variable(in.lhs) + Affine::variable(in.rhs), {}, {}, {}, {}});
      rec.q_lhs = square(in.lhs);
      rec.q_rhs = square(in.rhs);
      rec.q_s = square(rec.s);
      out.schedule.push_back({Definition::Kind::Half, in.dest, {}, {}, rec.q_s, rec.q_lhs, rec.q_rhs});
    }
    out.eliminations.push_back(std::move(rec));
  }
  return out;
}

GadgetEncoding encode_square(const std::string& t, const std::string& q, int M, NameSupply& names) {
  if (M < 3) throw DomainError("gadget length M must be at least 3, got " + std::to_string(M));
  GadgetEncoding g;
  g.t = t;
  g.q = q;
  for (int i = 0; i < M; ++i) g.u.push_back(names.fresh("_u"));
  for (int i = 0; i < M; ++i) g.w.push_back(names.fresh("_w"));
  for (int i = 0; i < M; ++i) g.squares.emplace_back(g.u[i], g.w[i]);
  auto var = Affine::variable;
  for (int i = 1; i + 1 < M; ++i) {
    g.linear.push_back(var(g.u[i + 1]) - var(g.u[i]) * Int(2) + var(g.u[i - 1]) - Affine::constant_of(2));
  }
  g.linear.push_back(var(q) - var(g.u[0]));
  g.linear.push_back(var(g.u[1]) - var(g.u[0]) - var(t) * Int(2) - Affine::constant_of(1));
  return g;
}

TargetSystem compile(const SourceSystem& sys, int M) {
  if (M < 3) throw DomainError("gadget length M must be at least 3, got " + std::to_string(M));
  NameSupply names;
  TargetSystem out;
  out.buchi_m = M;
  out.intermediate = eliminate_mul(lower_tac(sys, names), names);
  out.vars = out.intermediate.vars;
  out.linear = out.intermediate.linear();
  for (const auto& sq : out.intermediate.squarings()) {
    GadgetEncoding g = encode_square(sq.t, sq.q, M, names);
    out.vars.insert(out.vars.end(), g.u.begin(), g.u.end());
    out.vars.insert(out.vars.end(), g.w.begin(), g.w.end());
    out.linear.insert(out.linear.end(), g.linear.begin(), g.linear.end());
    out.squares.insert(out.squares.end(), g.squares.begin(), g.squares.end());
    out.gadgets.push_back(std::move(g));
  }
  auto& c = out.counters;
  c.source_vars = sys.variables.size();
  c.tac_temporaries = out.intermediate.program.temporaries.size();
  c.elimination_temporaries = out.intermediate.temporaries.size();
  c.multiplications = out.intermediate.program.multiplications();
  c.squarings = out.gadgets.size();
  c.gadget_vars = 2 * static_cast<std::size_t>(M) * out.gadgets.size();
  return out;
}

// ---------------------------------------------------------------- checking

ValidationResult validate_diagonal(const TargetSystem& target) {
  auto fail = [](std::string msg) { return ValidationResult{false, std::move(msg)}; };
  std::set<std::string> declared(target.vars.begin(), target.vars.end());
  if (declared.size() != target.vars.size()) return fail("duplicate variable declaration");

  std::map<std::string, int> uses;
  for (const auto& eq : target.linear) {
    for (const auto& entry : eq.coeffs) {
      if (!declared.count(entry.first)) return fail("undeclared variable '" + entry.first + "'");
      ++uses[entry.first];
    }
  }
  for (const auto& [u, w] : target.squares) {
    if (!declared.count(u) || !declared.count(w)) return fail("undeclared variable in " + u + " = " + w + "^2");
    if (u == w) return fail("degenerate square equation " + u + " = " + u + "^2");
    ++uses[u];
  }
  for (const auto& [u, w] : target.squares) {
    if (uses.count(w)) return fail("square root variable '" + w + "' occurs outside its square equation");
    uses[w] = 1;
  }
  std::map<std::string, int> roots;
  for (const auto& sq : target.squares) {
    if (++roots[sq.second] > 1) return fail("square root variable '" + sq.second + "' is shared");
  }

  // Independent monomial-level check on the expanded polynomials.
  auto check = [&](const MPoly& p, const std::string& what) -> std::optional<ValidationResult> {
    for (const auto& term : p.terms()) {
      unsigned degree = 0;
      unsigned support = 0;
      for (unsigned e : term.first) {
        degree += e;
        if (e != 0) ++support;
      }
      if (degree > 2) return fail(what + " has degree " + std::to_string(degree));
      if (degree == 2 && support != 1) return fail(what + " has a cross term");
    }
    return std::nullopt;
  };
  for (const auto& eq : target.linear) {
    MPoly p = MPoly::constant(target.vars, Rat(eq.constant));
    for (const auto& [v, c] : eq.coeffs) p += MPoly::variable(target.vars, v) * Rat(c);
    if (auto r = check(p, "equation " + eq.str() + " = 0")) return *r;
  }
  for (const auto& [u, w] : target.squares) {
    MPoly p = MPoly::variable(target.vars, u) - MPoly::variable(target.vars, w).pow(2);
    if (auto r = check(p, "equation " + u + " = " + w + "^2")) return *r;
  }
  return {};
}

namespace {

const Int& lookup(const Witness& w, const std::string& v) {
  auto it = w.find(v);
  if (it == w.end()) throw DomainError("witness has no value for '" + v + "'");
  return it->second;
}

// Exact values of every scheduled definition, with q := t^2 for squarings.
void run_schedule(const std::vector<Definition>& schedule, Witness& w) {
  for (const auto& d : schedule) {
    switch (d.kind) {
      case Definition::Kind::Linear: w[d.dest] = d.value.evaluate(w); break;
      case Definition::Kind::Square: {
        const Int& t = lookup(w, d.t);
        w[d.dest] = t * t;
        break;
      }
      case Definition::Kind::Half: {
        Int twice = lookup(w, d.q_s) - lookup(w, d.q_a) - lookup(w, d.q_b);
        if (!mpz_even_p(twice.get_mpz_t())) throw std::logic_error("polarization produced an odd difference");
        w[d.dest] = twice / 2;
        break;
      }
    }
  }
}

}  // namespace

bool satisfies(const TargetSystem& target, const Witness& w) {
  for (const auto& eq : target.linear) {
    if (eq.evaluate(w) != 0) return false;
  }
  for (const auto& [u, r] : target.squares) {
    const Int& root = lookup(w, r);
    if (lookup(w, u) != root * root) return false;
  }
  return true;
}

Witness translate_witness(const SourceSystem& sys, const TargetSystem& target, const Witness& w) {
  Witness out;
  for (const auto& v : sys.variables) out[v] = lookup(w, v);
  if (!satisfies(sys, out)) throw DomainError("witness does not satisfy the source system");
  run_schedule(target.intermediate.schedule, out);
  for (const auto& g : target.gadgets) {
    const Int t = lookup(out, g.t);
    for (std::size_t i = 0; i < g.u.size(); ++i) {
      const Int root = t + static_cast<unsigned long>(i);
      out[g.w[i]] = root;
      out[g.u[i]] = root * root;
    }
  }
  if (!satisfies(target, out)) throw std::logic_error("lifted witness does not satisfy the target system");
  return out;
}

namespace {

struct OutcomeTable {
  std::map<Int, std::vector<Int>> by_t;
  std::size_t solutions = 0;
  std::size_t nontrivial = 0;
};

long long exact_root(long long n) {
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Counts solutions with every w_i >= 0; signs of w_i do not affect (t, q).
OutcomeTable outcome_table(int M, long bound) {
  if (M < 3) throw DomainError("gadget length M must be at least 3, got " + std::to_string(M));
  if (bound < 0) throw DomainError("gadget bound must be nonnegative");
  if (bound > 3'000'000) throw DomainError("gadget bound too large");
  const long long limit = static_cast<long long>(bound) * bound;
  std::map<long long, std::set<long long>> found;
  OutcomeTable table;
  for (long long w1 = 0; w1 <= bound; ++w1) {
    const long long u1 = w1 * w1;
    for (long long w2 = 0; w2 <= bound; ++w2) {
      const long long u2 = w2 * w2;
      if (((u2 - u1) & 1) == 0) continue;
      long long prev = u1;
      long long cur = u2;
      bool ok = true;
      for (int k = 3; k <= M && ok; ++k) {
        const long long next = 2 * cur - prev + 2;
        if (next < 0 || next > limit) {
          ok = false;
          break;
        }
        const long long r = exact_root(next);
        ok = r * r == next;
        prev = cur;
        cur = next;
      }
      if (!ok) continue;
      const long long t = (u2 - u1 - 1) / 2;
      ++table.solutions;
      if (u1 != t * t) ++table.nontrivial;
      found[t].insert(u1);
    }
  }
  for (const auto& [t, qs] : found) {
    auto& dst = table.by_t[Int(static_cast<long>(t))];
    for (long long q : qs) dst.emplace_back(static_cast<long>(q));
  }
  return table;
}

struct IndexedAffine {
  std::vector<std::pair<std::size_t, Int>> terms;
  Int constant;

  Int evaluate(const std::vector<Int>& values) const {
    Int out = constant;
    for (const auto& [i, c] : terms) out += c * values[i];
    return out;
  }
};

struct Step {
  Definition::Kind kind;
  std::size_t dest;
  IndexedAffine value;
  std::size_t t = 0;
  std::size_t q_s = 0;
  std::size_t q_a = 0;
  std::size_t q_b = 0;
};

void parallel_for(std::size_t total, unsigned threads, const std::function<void(unsigned, std::size_t)>& body) {
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < total; ++i) body(0, i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < threads; ++k) {
    pool.emplace_back([&, k] {
      for (std::size_t i = k; i < total; i += threads) body(k, i);
    });
  }
  for (auto& th : pool) th.join();
}

struct WorkerLog {
  std::vector<std::pair<std::size_t, Witness>> solutions;
  std::vector<std::pair<std::size_t, Witness>> lift_failures;
  std::vector<std::pair<std::size_t, Witness>> projection_failures;
  std::size_t lifted = 0;
  std::size_t target_solutions = 0;
  std::size_t uncovered = 0;
  Int max_t;
};

std::vector<Witness> merged(std::vector<WorkerLog>& logs,
                            std::vector<std::pair<std::size_t, Witness>> WorkerLog::*field) {
  std::vector<std::pair<std::size_t, Witness>> all;
  for (auto& log : logs) {
    auto& part = log.*field;
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    part.clear();
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Witness> out;
  for (auto& entry : all) out.push_back(std::move(entry.second));
  return out;
}

}  // namespace

std::map<Int, std::vector<Int>> gadget_outcomes(int M, long bound) { return outcome_table(M, bound).by_t; }

EquisatReport bounded_equisat(const SourceSystem& sys, const TargetSystem& target, long box,
                              const EquisatOptions& options) {
  if (box < 0) throw DomainError("box must be nonnegative");
  EquisatReport report;
  report.box = box;

  const std::size_t k = sys.variables.size();
  const std::size_t side = 2 * static_cast<std::size_t>(box) + 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > options.max_assignments / side) {
      throw DomainError("box too large: more than " + std::to_string(options.max_assignments) +
                        " source assignments");
    }
    total *= side;
  }
  report.assignments = total;

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < target.vars.size(); ++i) index.emplace(target.vars[i], i);
  auto idx = [&](const std::string& v) {
    auto it = index.find(v);
    if (it == index.end()) throw DomainError("target has no variable '" + v + "'");
    return it->second;
  };
  auto indexed = [&](const Affine& a) {
    IndexedAffine out;
    out.constant = a.constant;
    for (const auto& [v, c] : a.coeffs) out.terms.emplace_back(idx(v), c);
    return out;
  };
  std::vector<std::size_t> source_index;
  for (const auto& v : sys.variables) source_index.push_back(idx(v));
  std::vector<Step> steps;
  for (const auto& d : target.intermediate.schedule) {
    Step s{d.kind, idx(d.dest), {}};
    if (d.kind == Definition::Kind::Linear) s.value = indexed(d.value);
    if (d.kind == Definition::Kind::Square) s.t = idx(d.t);
    if (d.kind == Definition::Kind::Half) {
      s.q_s = idx(d.q_s);
      s.q_a = idx(d.q_a);
      s.q_b = idx(d.q_b);
    }
    steps.push_back(std::move(s));
  }
  std::vector<IndexedAffine> constraints;
  for (const auto& c : target.intermediate.constraints) constraints.push_back(indexed(c));

  auto decode = [&](std::size_t i) {
    Witness w;
    for (std::size_t j = 0; j < k; ++j) {
      w[sys.variables[j]] = Int(static_cast<long>(i % side)) - box;
      i /= side;
    }
    return w;
  };

  const unsigned threads = std::max(1U, options.threads);
  std::vector<WorkerLog> logs(threads);

  // Forward: exhaustive source solutions, each lifted and checked exactly.
  parallel_for(total, threads, [&](unsigned worker, std::size_t i) {
    WorkerLog& log = logs[worker];
    Witness w = decode(i);
    Witness honest = w;
    run_schedule(target.intermediate.schedule, honest);
    for (const auto& sq : target.gadgets) log.max_t = std::max(log.max_t, Int(abs(honest.at(sq.t))));
    if (!satisfies(sys, w)) return;
    log.solutions.emplace_back(i, w);
    try {
      if (satisfies(target, translate_witness(sys, target, w))) {
        ++log.lifted;
        return;
      }
    } catch (const std::exception&) {
    }
    log.lift_failures.emplace_back(i, w);
  });

  Int max_t;
  for (const auto& log : logs) {
    max_t = std::max(max_t, log.max_t);
    report.lifted += log.lifted;
  }
  report.source_solutions = merged(logs, &WorkerLog::solutions);
  report.lift_failures = merged(logs, &WorkerLog::lift_failures);

  const Int bound = max_t + target.buchi_m;
  if (!bound.fits_slong_p() || bound.get_si() > options.max_gadget_bound) {
    report.gadget_bound = bound.fits_slong_p() ? bound.get_si() : -1;
    return report;
  }
  report.gadget_bound = bound.get_si();
  const OutcomeTable table = outcome_table(target.buchi_m, report.gadget_bound);
  report.gadget_solutions = table.solutions;
  report.nontrivial_gadget_solutions = table.nontrivial;
  report.backward_checked = true;

  // Backward: every target solution over a source assignment in the box,
  // with gadget witnesses inside the table bound, must project to a source
  // solution. Only squarings branch; every other variable is determined.
  parallel_for(total, threads, [&](unsigned worker, std::size_t i) {
    WorkerLog& log = logs[worker];
    const Witness w = decode(i);
    const bool source_ok = satisfies(sys, w);
    std::vector<Int> values(target.vars.size());
    for (std::size_t j = 0; j < k; ++j) values[source_index[j]] = w.at(sys.variables[j]);
    std::function<void(std::size_t)> descend = [&](std::size_t at) {
      if (at == steps.size()) {
        for (const auto& c : constraints) {
          if (c.evaluate(values) != 0) return;
        }
        ++log.target_solutions;
        if (!source_ok) log.projection_failures.emplace_back(i, w);
        return;
      }
      const Step& s = steps[at];
      switch (s.kind) {
        case Definition::Kind::Linear:
          values[s.dest] = s.value.evaluate(values);
          descend(at + 1);
          return;
        case Definition::Kind::Half: {
          Int twice = values[s.q_s] - values[s.q_a] - values[s.q_b];
          if (!mpz_even_p(twice.get_mpz_t())) return;
          values[s.dest] = twice / 2;
          descend(at + 1);
          return;
        }
        case Definition::Kind::Square: {
          const Int& t = values[s.t];
          if (abs(t) > max_t) {
            ++log.uncovered;
            return;
          }
          auto it = table.by_t.find(t);
          if (it == table.by_t.end()) return;
          for (const Int& q : it->second) {
            values[s.dest] = q;
            descend(at + 1);
          }
          return;
        }
      }
    };
    descend(0);
  });
  for (const auto& log : logs) {
    report.target_solutions += log.target_solutions;
    report.uncovered += log.uncovered;
  }
  report.projection_failures = merged(logs, &WorkerLog::projection_failures);
  return report;
}

// ---------------------------------------------------------------- output

std::string conditional_banner(int M) {
  const std::string m = std::to_string(M);
  return "conditional: BP(Z," + m + ")\n" +
         "forward direction (source solution -> target solution) is unconditional\n" +
         "backward direction assumes every integer sequence of " + m +
         " squares with constant second difference 2 consists of consecutive squares\n";
}

std::string to_text(const TargetSystem& target) {
  std::ostringstream out;
  std::istringstream banner(conditional_banner(target.buchi_m));
  for (std::string line; std::getline(banner, line);) out << "# " << line << "\n";
  out << "# M = " << target.buchi_m << "\n";
  out << "vars (" << target.vars.size() << "):";
  for (const auto& v : target.vars) out << " " << v;
  out << "\nlinear (" << target.linear.size() << "):\n";
  for (const auto& eq : target.linear) out << "  " << eq.str() << " = 0\n";
  out << "squares (" << target.squares.size() << "):\n";
  for (const auto& [u, w] : target.squares) out << "  " << u << " = " << w << "^2\n";
  return out.str();
}

std::string to_json(const TargetSystem& target) {
  using nlohmann::ordered_json;
  auto number = [](const Int& v) -> ordered_json {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
  };
  ordered_json j;
  j["vars"] = target.vars;
  j["linear"] = ordered_json::array();
  for (const auto& eq : target.linear) {
    ordered_json coeffs = ordered_json::object();
    for (const auto& [v, c] : eq.coeffs) coeffs[v] = number(c);
    j["linear"].push_back({{"coeffs", coeffs}, {"const", number(eq.constant)}});
  }
  j["squares"] = ordered_json::array();
  for (const auto& [u, w] : target.squares) j["squares"].push_back({{"lhs", u}, {"rhs", w}});
  j["meta"] = {{"M", target.buchi_m},
               {"conditional", "BP(Z," + std::to_string(target.buchi_m) + ")"},
               {"note", conditional_banner(target.buchi_m)}};
  return j.dump(2);
}

}  // namespace buchi::reduction
