#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "buchi/reduction/compiler.hpp"
#include "buchi/reduction/formulas.hpp"
#include "buchi/reduction/syntax.hpp"
#include "buchi/sequences.hpp"
#include "generators.hpp"
#include "system_cases.hpp"
#include "json.hpp"

#include <set>

using namespace buchi;
using namespace buchi::reduction;

namespace {

MPoly var(const std::vector<std::string>& vars, const std::string& v) { return MPoly::variable(vars, v); }

// Target evaluation written against the raw fields only.
bool target_holds(const TargetSystem& t, const Witness& w) {
  for (const auto& eq : t.linear) {
    Int acc = eq.constant;
    for (const auto& [v, c] : eq.coeffs) acc += c * w.at(v);
    if (acc != 0) return false;
  }
  for (const auto& [u, r] : t.squares) {
    if (w.at(u) != w.at(r) * w.at(r)) return false;
  }
  return true;
}

using gen::random_system;

Witness assign(const SourceSystem& sys, const std::vector<long>& values) {
  Witness w;
  for (std::size_t i = 0; i < sys.variables.size(); ++i) w[sys.variables[i]] = values[i];
  return w;
}

// Calls body for every assignment of the source variables in [-box, box].
template <typename F>
void for_box(const SourceSystem& sys, long box, F body) {
  std::vector<long> v(sys.variables.size(), -box);
  for (;;) {
    body(assign(sys, v));
    std::size_t k = 0;
    while (k < v.size() && v[k] == box) v[k++] = -box;
    if (k == v.size()) return;
    ++v[k];
  }
}

}  // namespace

TEST_CASE("parse examples") {
  const SourceSystem a = parse("x*y + 3 = 10");
  CHECK(a.equations.size() == 1);
  CHECK(a.variables == std::vector<std::string>{"x", "y"});

  const SourceSystem b = parse("x^2 = 4");
  const auto norm = normalized(b);
  REQUIRE(norm.size() == 1);
  const MPoly x = var(b.variables, "x");
  CHECK(mpoly_identity_equal(norm[0], x * x - MPoly::constant(b.variables, Rat(4))));

  try {
    parse("x + = 3");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.pos().line == 1);
    CHECK(e.pos().column == 5);
  }
}

TEST_CASE("parse errors carry positions") {
  auto pos_of = [](const std::string& src) {
    try {
      parse(src);
    } catch (const SyntaxError& e) {
      return std::make_pair(e.pos().line, e.pos().column);
    }
    return std::make_pair(0, 0);
  };
  CHECK(pos_of("x = 1;\ny = (2") == std::make_pair(2, 7));
  CHECK(pos_of("x = 1 $") == std::make_pair(1, 7));
  CHECK(pos_of("x^65 = 1") == std::make_pair(1, 3));
  CHECK(pos_of("x / 2 = 1") == std::make_pair(1, 3));
  CHECK(pos_of("") == std::make_pair(1, 1));
  CHECK(pos_of("x = 1 = 2").first == 1);
  CHECK(pos_of("x^2 = 4") == std::make_pair(0, 0));
}

TEST_CASE("comments and separators") {
  const SourceSystem s = parse("# header\nx + y = 3; # trailing\n\nx - y = 1;\n");
  CHECK(s.equations.size() == 2);
  CHECK(satisfies(s, {{"x", Int(2)}, {"y", Int(1)}}));
  CHECK_FALSE(satisfies(s, {{"x", Int(1)}, {"y", Int(2)}}));
}

TEST_CASE("lower_tac examples") {
  NameSupply names;
  const TACProgram xy = lower_tac(parse("x*y = 6"), names);
  REQUIRE(xy.instrs.size() == 1);
  CHECK(xy.instrs[0].kind == TacInstr::Kind::Mul);
  CHECK(xy.instrs[0].dest == "_t1");
  CHECK(xy.instrs[0].lhs == "x");
  CHECK(xy.instrs[0].rhs == "y");
  REQUIRE(xy.constraints.size() == 1);
  CHECK(xy.constraints[0] == Affine::variable("_t1") - Affine::constant_of(6));

  NameSupply names2;
  const TACProgram sq = lower_tac(parse("x^2 = 4"), names2);
  REQUIRE(sq.instrs.size() == 1);
  CHECK(sq.instrs[0].lhs == "x");
  CHECK(sq.instrs[0].rhs == "x");
  CHECK(sq.str() == "_t1 := x * x\n_t1 - 4 = 0\n");

  NameSupply names3;
  const TACProgram lin = lower_tac(parse("x + y = z; z = 2"), names3);
  CHECK(lin.multiplications() == 0);
  CHECK(lin.instrs.empty());
  CHECK(lin.constraints.size() == 2);
}

TEST_CASE("powers use square-and-multiply and products are shared") {
  NameSupply names;
  CHECK(lower_tac(parse("x^8 = 1"), names).multiplications() == 3);
  NameSupply names2;
  CHECK(lower_tac(parse("x^7 = 1"), names2).multiplications() == 4);
  NameSupply names3;
  CHECK(lower_tac(parse("x*y + y*x = 2; x*y = 1"), names3).multiplications() == 1);
}

TEST_CASE("lowering preserves solutions") {
  // Execute the TAC program on every assignment and compare with the source.
  gen::Gen g(0x7ac);
  for (int trial = 0; trial < 60; ++trial) {
    const SourceSystem sys = parse(random_system(g));
    NameSupply names;
    const TACProgram prog = lower_tac(sys, names);
    for_box(sys, 3, [&](Witness w) {
      for (const auto& in : prog.instrs) {
        w[in.dest] = in.kind == TacInstr::Kind::Mul ? w.at(in.lhs) * w.at(in.rhs) : in.value.evaluate(w);
      }
      bool holds = true;
      for (const auto& c : prog.constraints) holds = holds && c.evaluate(w) == 0;
      CHECK(holds == satisfies(sys, w));
    });
  }
}

TEST_CASE("eliminate_mul examples") {
  const SourceSystem sys = parse("v = a*b");
  const TargetSystem t = compile(sys);
  REQUIRE(t.intermediate.eliminations.size() == 1);
  const MulElimination& e = t.intermediate.eliminations[0];
  CHECK_FALSE(e.is_square);
  const Witness lifted = translate_witness(sys, t, {{"v", Int(15)}, {"a", Int(3)}, {"b", Int(5)}});
  CHECK(lifted.at(e.s) == 8);
  CHECK(lifted.at(e.q_s) == 64);
  CHECK(lifted.at(e.q_lhs) == 9);
  CHECK(lifted.at(e.q_rhs) == 25);
  CHECK(lifted.at(e.q_s) == lifted.at(e.q_lhs) + lifted.at(e.q_rhs) + 2 * lifted.at(e.dest));
  CHECK(t.intermediate.squarings().size() == 3);

  const TargetSystem sq = compile(parse("v = a*a"));
  REQUIRE(sq.intermediate.eliminations.size() == 1);
  CHECK(sq.intermediate.eliminations[0].is_square);
  CHECK(sq.intermediate.squarings().size() == 1);
  CHECK(sq.intermediate.temporaries.empty());

  NameSupply names;
  const TACProgram lin = lower_tac(parse("x + y = 3"), names);
  const IntermediateSystem same = eliminate_mul(lin, names);
  CHECK(same.schedule.empty());
  CHECK(same.constraints == lin.constraints);
  CHECK(same.linear() == lin.constraints);
}

TEST_CASE("squares are shared across products") {
  // x*y and x*z both need x^2; x*x reuses it too.
  const TargetSystem t = compile(parse("x*y + x*z + x*x = 3"));
  std::set<std::string> roots;
  for (const auto& s : t.intermediate.squarings()) CHECK(roots.insert(s.t).second);
}

TEST_CASE("encode_square examples") {
  NameSupply names;
  const GadgetEncoding g = encode_square("t", "q", 5, names);
  CHECK(g.squares.size() == 5);
  CHECK(g.linear.size() == 5);  // 3 second differences, 2 ties
  std::set<std::string> fresh(g.u.begin(), g.u.end());
  fresh.insert(g.w.begin(), g.w.end());
  CHECK(fresh.size() == 10);
  CHECK(g.u.front() == "_u1");
  CHECK(g.w.back() == "_w5");

  auto check_witness = [&](long t, std::vector<long> u, std::vector<long> w) {
    Witness x{{"t", Int(t)}, {"q", Int(t * t)}};
    for (std::size_t i = 0; i < 5; ++i) {
      x[g.u[i]] = u[i];
      x[g.w[i]] = w[i];
    }
    for (const auto& eq : g.linear) CHECK(eq.evaluate(x) == 0);
    for (const auto& [a, b] : g.squares) CHECK(x.at(a) == x.at(b) * x.at(b));
  };
  check_witness(3, {9, 16, 25, 36, 49}, {3, 4, 5, 6, 7});
  check_witness(0, {0, 1, 4, 9, 16}, {0, 1, 2, 3, 4});
  CHECK(second_difference({Int(9), Int(16), Int(25), Int(36), Int(49)}) == std::vector<Int>{2, 2, 2});

  CHECK_THROWS_AS(encode_square("t", "q", 2, names), DomainError);
  CHECK_THROWS_AS(compile(parse("x = 1"), 2), DomainError);
}

TEST_CASE("canonical gadget witnesses satisfy every gadget") {
  for (int M : {3, 4, 5, 8}) {
    NameSupply names;
    const GadgetEncoding g = encode_square("t", "q", M, names);
    for (long t = -30; t <= 30; ++t) {
      Witness x{{"t", Int(t)}, {"q", Int(t * t)}};
      for (int i = 0; i < M; ++i) {
        x[g.w[static_cast<std::size_t>(i)]] = t + i;
        x[g.u[static_cast<std::size_t>(i)]] = (t + i) * (t + i);
      }
      for (const auto& eq : g.linear) CHECK(eq.evaluate(x) == 0);
      for (const auto& [a, b] : g.squares) CHECK(x.at(a) == x.at(b) * x.at(b));
      // Any other q breaks the tie q = u_1.
      x["q"] = t * t + 1;
      bool all = true;
      for (const auto& eq : g.linear) all = all && eq.evaluate(x) == 0;
      CHECK_FALSE(all);
    }
  }
}

TEST_CASE("gadget outcomes at M = 5 within |w_i| <= 40 force q = t^2") {
  const auto table = gadget_outcomes(5, 40);
  CHECK_FALSE(table.empty());
  for (const auto& [t, qs] : table) {
    REQUIRE(qs.size() == 1);
    CHECK(qs[0] == t * t);
  }
  // Same bound through the sequence search: no nontrivial 5-term sequence.
  CHECK(search(5, 40).empty());

  // Independent enumeration over all (w_1, w_2), rebuilding u_3..u_5.
  std::map<Int, std::set<Int>> direct;
  for (long w1 = -40; w1 <= 40; ++w1) {
    for (long w2 = -40; w2 <= 40; ++w2) {
      const long u1 = w1 * w1, u2 = w2 * w2;
      if ((u2 - u1 - 1) % 2 != 0) continue;
      const long t = (u2 - u1 - 1) / 2;
      long prev = u1, cur = u2;
      bool ok = true;
      for (int i = 3; i <= 5 && ok; ++i) {
        const long next = 2 * cur - prev + 2;
        bool found = false;
        for (long w = 0; w <= 40 && !found; ++w) found = w * w == next;
        ok = found;
        prev = cur;
        cur = next;
      }
      if (ok) direct[Int(t)].insert(Int(u1));
    }
  }
  std::map<Int, std::set<Int>> got;
  for (const auto& [t, qs] : table) got[t] = std::set<Int>(qs.begin(), qs.end());
  CHECK(got == direct);
}

TEST_CASE("short gadgets admit non-square outcomes") {
  // The length-3 sequence (0, 7, 10) gives u_1 = 0, u_2 = 49, so t = 24 with
  // q = 0: backward soundness genuinely depends on M.
  const auto table = gadget_outcomes(3, 30);
  REQUIRE(table.count(Int(24)));
  const auto& qs = table.at(Int(24));
  CHECK(std::find(qs.begin(), qs.end(), Int(0)) != qs.end());
  CHECK(std::find(qs.begin(), qs.end(), Int(576)) != qs.end());
}

TEST_CASE("compile examples") {
  const SourceSystem sq = parse("x*x = 4");
  const TargetSystem t = compile(sq, 5);
  CHECK(t.counters.source_vars == 1);
  CHECK(t.buchi_m == 5);
  for (long x : {-2L, 2L}) {
    const Witness w = translate_witness(sq, t, {{"x", Int(x)}});
    CHECK(target_holds(t, w));
    CHECK(satisfies(t, w));
  }
  const Witness w = translate_witness(sq, t, {{"x", Int(2)}});
  std::vector<Int> u;
  for (const auto& name : t.gadgets.at(0).u) u.push_back(w.at(name));
  CHECK(u == std::vector<Int>{4, 9, 16, 25, 36});
  CHECK_THROWS_AS(translate_witness(sq, t, {{"x", Int(1)}}), DomainError);

  const SourceSystem never = parse("x = x + 1");
  const EquisatReport none = bounded_equisat(never, compile(never), 10);
  CHECK(none.source_solutions.empty());
  CHECK(none.target_solutions == 0);
  CHECK(none.pass());

  const SourceSystem pair = parse("x*y = 6; x + y = 5");
  const EquisatReport rep = bounded_equisat(pair, compile(pair), 10);
  std::set<std::pair<Int, Int>> sols;
  for (const auto& s : rep.source_solutions) sols.emplace(s.at("x"), s.at("y"));
  CHECK(sols == std::set<std::pair<Int, Int>>{{2, 3}, {3, 2}});
  CHECK(rep.lifted == 2);
  CHECK(rep.pass());
  CHECK(rep.backward_checked);
  CHECK(rep.target_solutions == 2);
}

TEST_CASE("translate_witness polarization values") {
  const SourceSystem sys = parse("x*y = 6");
  const TargetSystem t = compile(sys);
  const Witness w = translate_witness(sys, t, {{"x", Int(2)}, {"y", Int(3)}});
  const MulElimination& e = t.intermediate.eliminations.at(0);
  CHECK(w.at(e.s) == 5);
  CHECK(w.at(e.q_s) == 25);
  CHECK(w.at(e.q_lhs) == 4);
  CHECK(w.at(e.q_rhs) == 9);
  CHECK(w.at(e.dest) == 6);
}

TEST_CASE("bounded_equisat examples") {
  const SourceSystem four = parse("x*x = 4");
  const EquisatReport a = bounded_equisat(four, compile(four), 10);
  CHECK(a.source_solutions.size() == 2);
  CHECK(a.lifted == 2);
  CHECK(a.backward_checked);
  CHECK(a.nontrivial_gadget_solutions == 0);
  CHECK(a.pass());
  CHECK(a.assignments == 21);

  const SourceSystem three = parse("x*x = 3");
  const EquisatReport b = bounded_equisat(three, compile(three), 10);
  CHECK(b.source_solutions.empty());
  CHECK(b.backward_checked);
  CHECK(b.target_solutions == 0);
  CHECK(b.pass());

  const SourceSystem wide = parse("a + b + c + d + e = 0");
  EquisatOptions small;
  small.max_assignments = 1000;
  CHECK_THROWS_AS(bounded_equisat(wide, compile(wide), 10, small), DomainError);
}

TEST_CASE("bounded_equisat is thread-invariant") {
  const SourceSystem sys = parse("x*y - z = 2; x + z = y");
  const TargetSystem t = compile(sys);
  const EquisatReport one = bounded_equisat(sys, t, 8);
  for (unsigned threads : {2U, 4U}) {
    EquisatOptions opt;
    opt.threads = threads;
    const EquisatReport many = bounded_equisat(sys, t, 8, opt);
    CHECK(many.source_solutions == one.source_solutions);
    CHECK(many.target_solutions == one.target_solutions);
    CHECK(many.lifted == one.lifted);
    CHECK(many.pass() == one.pass());
  }
}

TEST_CASE("random systems: diagonal form, forward soundness, counters") {
  gen::Gen g(0xd1a9);
  std::size_t solutions = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::string src = random_system(g);
    CAPTURE(src);
    const SourceSystem sys = parse(src);
    const TargetSystem t = compile(sys);
    const ValidationResult v = validate_diagonal(t);
    CHECK_MESSAGE(v.ok, v.message);

    // Diagonal form checked independently: every equation is linear or
    // u - w^2, and each root w occurs only in its own square equation.
    std::map<std::string, int> occurrences;
    for (const auto& eq : t.linear) {
      for (const auto& kv : eq.coeffs) ++occurrences[kv.first];
    }
    for (const auto& [u, w] : t.squares) CHECK(occurrences[w] == 0);

    const auto& c = t.counters;
    CHECK(t.vars.size() == c.source_vars + c.tac_temporaries + c.elimination_temporaries + c.gadget_vars);
    CHECK(c.gadget_vars == 2 * static_cast<std::size_t>(t.buchi_m) * c.squarings);
    // Polarization spends at most three squarings and four new names per product.
    CHECK(c.squarings <= 3 * c.multiplications);
    CHECK(c.elimination_temporaries <= 4 * c.multiplications);
    CHECK(t.vars.size() <= c.source_vars + c.tac_temporaries + (6 * t.buchi_m + 4) * c.multiplications);

    for_box(sys, sys.variables.size() <= 2 ? 10 : 6, [&](const Witness& w) {
      if (!satisfies(sys, w)) return;
      ++solutions;
      const Witness lifted = translate_witness(sys, t, w);
      CHECK(target_holds(t, lifted));
      for (const auto& [name, value] : w) CHECK(lifted.at(name) == value);
    });
  }
  // The generator must produce satisfiable systems for the lift to be tested.
  CHECK(solutions > 50);
}

TEST_CASE("validator rejects non-diagonal systems") {
  TargetSystem t = compile(parse("x*x = 4"));
  REQUIRE(validate_diagonal(t).ok);

  TargetSystem shared_root = t;
  shared_root.linear.push_back(Affine::variable(t.squares.front().second) - Affine::constant_of(1));
  CHECK_FALSE(validate_diagonal(shared_root).ok);

  TargetSystem undeclared = t;
  undeclared.linear.push_back(Affine::variable("ghost"));
  CHECK_FALSE(validate_diagonal(undeclared).ok);

  TargetSystem two_roots = t;
  two_roots.squares.emplace_back(t.squares.back().first, t.squares.front().second);
  CHECK_FALSE(validate_diagonal(two_roots).ok);
}

TEST_CASE("compilation is deterministic") {
  const SourceSystem sys = parse("x^3 + x*y = 7; y*y = x + 1");
  CHECK(to_text(compile(sys)) == to_text(compile(parse("x^3 + x*y = 7; y*y = x + 1"))));
  CHECK(to_json(compile(sys)) == to_json(compile(sys)));
  CHECK(compile(sys).vars == compile(sys).vars);
}

TEST_CASE("serialized forms") {
  const TargetSystem t = compile(parse("x*x = 4"), 7);
  const std::string text = to_text(t);
  CHECK(text.rfind("# conditional: BP(Z,7)", 0) == 0);
  CHECK(conditional_banner(7).find("sequence of 7 squares") != std::string::npos);
  CHECK(text.find("# backward direction assumes every integer sequence of 7 squares") != std::string::npos);

  const auto j = nlohmann::json::parse(to_json(t));
  CHECK(j["meta"]["M"] == 7);
  CHECK(j["meta"]["conditional"] == "BP(Z,7)");
  CHECK(j["vars"].size() == t.vars.size());
  CHECK(j["squares"].size() == t.squares.size());
  CHECK(j["linear"].size() == t.linear.size());
  CHECK(j["squares"][0]["lhs"] == t.squares[0].first);
  CHECK(j["squares"][0]["rhs"] == t.squares[0].second);
  // The linear part round-trips into a witness check.
  const Witness w = translate_witness(parse("x*x = 4"), t, {{"x", Int(-2)}});
  for (const auto& eq : j["linear"]) {
    Int acc(eq["const"].get<long>());
    for (const auto& [name, coeff] : eq["coeffs"].items()) acc += Int(coeff.get<long>()) * w.at(name);
    CHECK(acc == 0);
  }
}

TEST_CASE("big coefficients serialize as strings") {
  const TargetSystem t = compile(parse("x = 123456789012345678901234567890"));
  const auto j = nlohmann::json::parse(to_json(t));
  CHECK(j["linear"][0]["const"] == "-123456789012345678901234567890");
}

TEST_CASE("formula printer") {
  const std::string f = print_formulas(FormulaMode::F, 35);
  const std::string first_line = f.substr(0, f.find('\n'));
  std::size_t bound = 0, second_diff = 0;
  for (std::size_t at = first_line.find("∃u_"); at != std::string::npos; at = first_line.find("∃u_", at + 1)) ++bound;
  for (std::size_t at = first_line.find("+ 2 ∧"); at != std::string::npos; at = first_line.find("+ 2 ∧", at + 1)) {
    ++second_diff;
  }
  CHECK(bound == 35);
  CHECK(second_diff == 33);
  CHECK(first_line.find("x = u_1 ∧ 2y + 1 = u_2−u_1)") != std::string::npos);

  const std::string h = print_formulas(FormulaMode::H, 35);
  CHECK(h.find("∃u∃v (G[x+y,u] ∧ G[x−y,v] ∧ u = v+4w)") != std::string::npos);
  CHECK(h.find("G[x,y]: F[x,y] ∧ F[zx,z^2y]") != std::string::npos);

  const std::string psi = print_formulas(FormulaMode::Psi, 5, {Rat(1), Rat(2), Rat(3)});
  CHECK(psi.find("c_3 = 2 − c_1 + 2c_2") != std::string::npos);
  CHECK(psi.find("c_4 = 6 − 2c_1 + 3c_2") != std::string::npos);
  CHECK(psi.find("c_2 − c_1 = 2x + 1 ∧ y = c_1)") != std::string::npos);
  const std::string psi2 = print_formulas(FormulaMode::Psi, 5, {Rat(2), Rat(3)});
  CHECK(psi2.find("c_2 − c_1 = 4x + 4") != std::string::npos);

  CHECK(parse_formula_mode("psi") == FormulaMode::Psi);
  CHECK(parse_formula_mode("g") == FormulaMode::G);
  CHECK_FALSE(parse_formula_mode("K"));
  CHECK_THROWS_AS(print_formulas(FormulaMode::F, 2), DomainError);
}
