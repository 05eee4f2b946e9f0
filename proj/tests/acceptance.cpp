// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include "buchi/nevanlinna.hpp"
#include "buchi/reduction/compiler.hpp"
#include "buchi/reduction/syntax.hpp"
#include "buchi/sequences.hpp"
#include "buchi/surfaces.hpp"
#include "cli.hpp"
#include "generators.hpp"
#include "surface_cases.hpp"
#include "system_cases.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

using namespace buchi;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool report(int id, const std::function<Outcome()>& body, double limit_seconds = 0) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = seconds_since(t0);
  if (limit_seconds > 0 && s >= limit_seconds) {
    o.pass = false;
    o.detail += "; over the " + std::to_string(static_cast<int>(limit_seconds)) + " s limit";
  }
  std::printf("criterion %2d: %s (%.2f s) %s\n", id, o.pass ? "PASS" : "FAIL", s, o.detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

Rat frac(long n, long d) {
  Rat q{Int(n), Int(d)};
  q.canonicalize();
  return q;
}

long val(const Rat& q, unsigned long p) {
  long v = 0;
  Int num = q.get_num(), den = q.get_den();
  for (; num % p == 0; num /= p) ++v;
  for (; den % p == 0; den /= p) --v;
  return v;
}

const unsigned long kPrimes[] = {2, 3, 5, 7};

Outcome search_length4() {
  std::ostringstream out, err;
  const int code = cli::run({"seq", "search", "--length", "4", "--bound", "100"}, out, err);
  const bool found = out.str().find("\n6,23,32,39\n") != std::string::npos;
  return {code == 0 && found, "seq search --length 4 --bound 100 lists 6,23,32,39: " + std::string(found ? "yes" : "no")};
}

Outcome search_length5() {
  setenv("BUCHI_THREADS", "1", 1);
  std::ostringstream out, err;
  const int code = cli::run({"seq", "search", "--length", "5", "--bound", "10000"}, out, err);
  unsetenv("BUCHI_THREADS");
  const std::string text = out.str();
  const std::string expected = "nontrivial sequences of length 5 with x_1, x_2 <= 10000: 0\n";
  return {code == 0 && text == expected, "single worker, output: " + text.substr(0, text.find('\n'))};
}

Outcome family() {
  std::size_t checked = 0;
  for (unsigned long big_n = 1; big_n <= 6; ++big_n) {
    const auto fam = counterexample_family(big_n);
    Int big = factorial(2 * big_n);
    for (std::size_t i = 0; i < fam.nodes.size(); ++i) {
      // Recompute from the definition instead of trusting the stored nodes.
      const Int fi = factorial(i + 1);
      const Int a = fi + big / fi;
      const Int value = a * a - 4 * big;
      if (a != fam.nodes[i] || !is_square_int(value) || value != fam.roots[i] * fam.roots[i]) {
        return {false, "N = " + std::to_string(big_n) + ", i = " + std::to_string(i + 1)};
      }
      if (i > 0 && !(fam.nodes[i] < fam.nodes[i - 1])) return {false, "nodes not decreasing"};
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " values f_N(a_i) are squares, nodes strictly decreasing"};
}

Outcome correspondence() {
  gen::Gen g(0xacce55);
  const auto seeds = gen::correspondence_seeds();
  std::size_t failures = 0, nonsquare = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto c = gen::correspondence_case(g, seeds);
    const EvaluationNodes nodes(c.nodes);
    const ProjectivePoint p = j_of_f(nodes, c.f);
    const bool round_trip = f_of_point(nodes, p) == c.f;
    const bool on_surface = contains(BuchiSurface::from_nodes(nodes), p);
    const auto [sq, trivial] = square_iff_trivial(nodes, c.f);
    if (!round_trip || !on_surface || sq != trivial) ++failures;
    nonsquare += sq ? 0 : 1;
  }
  return {failures == 0, "1000 cases (" + std::to_string(nonsquare) + " non-square f), failures: " +
                             std::to_string(failures)};
}

Outcome smoothness() {
  gen::Gen g(0x5a0074);
  std::size_t failures = 0, total = 0;
  for (std::size_t n = 3; n <= 8; ++n) {
    for (int trial = 0; trial < 200; ++trial) {
      const BuchiSurface s(gen::distinct_nonzero_integers(g, n - 1, 25));
      const ProjectivePoint p = gen::surface_point(g, s);
      ++total;
      if (!contains(s, p) || jacobian_rank(s, p) != n - 2) ++failures;
    }
  }
  return {failures == 0, std::to_string(total) + " points on X_3..X_8, rank n-2 failures: " + std::to_string(failures)};
}

Outcome identities() {
  const bool conic = conic_integrality_identity();
  const bool line = trivial_line_vanishing_identity();
  return {conic && line, std::string("conic identity ") + (conic ? "holds" : "fails") + ", trivial-line identity " +
                             (line ? "holds" : "fails")};
}

Outcome pjf() {
  gen::Gen g(0x9f5);
  std::size_t failures = 0, checks = 0;
  for (int trial = 0; trial < 50; ++trial) {
    RatFunc f = g.ratfunc(4, 60);
    while (f.is_zero()) f = g.ratfunc(4, 60);
    for (unsigned long p : kPrimes) {
      const PadicContext ctx(p);
      const auto bps = breakpoints(f, ctx);
      const Rat lo = (bps.empty() ? Rat(0) : bps.front()) - 1;
      const Rat hi = (bps.empty() ? Rat(0) : bps.back()) + 1;
      std::vector<Rat> rhos;
      for (long k = 0; k <= 5; ++k) rhos.push_back(lo + (hi - lo) * frac(k, 5));
      ++checks;
      if (!check_pjf(f, ctx, rhos).constant) ++failures;
    }
  }
  return {failures == 0, std::to_string(checks) + " (f, p) pairs over 6 radii spanning all breakpoints, failures: " +
                             std::to_string(failures)};
}

Outcome ldl() {
  gen::Gen g(0x1d15);
  std::size_t failures = 0;
  for (int trial = 0; trial < 500; ++trial) {
    RatFunc f = g.ratfunc(6, 40);
    while (f.is_zero()) f = g.ratfunc(6, 40);
    const unsigned n = static_cast<unsigned>(g.integer(1, 3));
    const Rat rho = frac(g.integer(-50, 50), 10);
    if (!check_ldl(f, n, PadicContext(kPrimes[g.integer(0, 3)]), {rho})) ++failures;
  }
  return {failures == 0, "500 samples, n <= 3, rho in [-5, 5], failures: " + std::to_string(failures)};
}

Outcome newton() {
  gen::Gen g(0x9e3);
  std::size_t failures = 0, radii = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const unsigned long p = kPrimes[g.integer(0, 3)];
    std::vector<Rat> roots;
    const long count = g.integer(1, 7);
    for (long i = 0; i < count; ++i) roots.push_back(g.integer(0, 6) == 0 ? Rat(0) : g.padic_rational(p, 4, 8));
    const UPoly h = UPoly::from_roots(roots) * g.nonzero_rational(30);
    for (long k = -14; k <= 14; ++k) {
      const Rat rho = frac(k, 2);
      unsigned long direct = 0;
      for (const auto& c : roots) direct += (sgn(c) == 0 || val(c, p) >= -rho) ? 1 : 0;
      ++radii;
      if (count_zeros(h, PadicContext(p), {rho}) != direct) ++failures;
    }
  }
  return {failures == 0, "100 polynomials, " + std::to_string(radii) + " radii, mismatches: " + std::to_string(failures)};
}

Outcome delta_and_difference() {
  gen::Gen g(0xde1);
  std::size_t failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    if (!delta_identity(g.ratfunc(4, 20), g.ratfunc(4, 20), g.rational(15))) ++failures;
  }
  for (int trial = 0; trial < 200; ++trial) {
    const RatFunc f = g.ratfunc(4, 20);
    const RatFunc base = g.ratfunc(4, 20);
    const Rat ai = g.rational(15), aj = g.rational(15);
    if (!difference_identity(f, ai, aj, shifted_square_minus(f, ai, base), shifted_square_minus(f, aj, base))) {
      ++failures;
    }
  }
  return {failures == 0, "200 delta and 200 difference cases, failures: " + std::to_string(failures)};
}

Outcome compiler() {
  using namespace buchi::reduction;
  gen::Gen g(0xc0301);
  std::size_t invalid = 0, lifted = 0, lift_failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const SourceSystem sys = parse(gen::random_system(g));
    const TargetSystem target = compile(sys, 5);
    if (!validate_diagonal(target).ok) ++invalid;
    const EquisatReport rep = bounded_equisat(sys, target, 10, {1, 10'000'000, 0});
    lifted += rep.lifted;
    lift_failures += rep.lift_failures.size();
  }
  std::size_t non_square = 0, outcomes = 0;
  for (const auto& [t, qs] : gadget_outcomes(5, 40)) {
    for (const auto& q : qs) {
      ++outcomes;
      if (q != t * t) ++non_square;
    }
  }
  const bool consistent = search(5, 40).empty() == (non_square == 0);
  const bool ok = invalid == 0 && lift_failures == 0 && non_square == 0 && consistent;
  return {ok, "100 systems: " + std::to_string(invalid) + " invalid, " + std::to_string(lifted) + " solutions lifted, " +
                  std::to_string(lift_failures) + " lift failures; M=5 |w_i|<=40: " + std::to_string(outcomes) +
                  " gadget outcomes, " + std::to_string(non_square) + " with q != t^2" +
                  (consistent ? ", agrees with search(5, 40)" : ", disagrees with search(5, 40)")};
}

}  // namespace

int main() {
  bool all = true;
  all &= report(1, search_length4, 1.0);
  all &= report(2, search_length5, 300.0);
  all &= report(3, family, 1.0);
  all &= report(4, correspondence);
  all &= report(5, smoothness);
  all &= report(6, identities);
  const bool c7 = report(7, pjf);
  const bool c8 = report(8, ldl);
  const bool c9 = report(9, newton);
  const bool c10 = report(10, delta_and_difference);
  all &= c7 && c8 && c9 && c10;
  all &= report(11, compiler, 120.0);
  all &= report(12, [&] {
    return Outcome{c7 && c8 && c9 && c10,
                   "whole-class statements are not checkable at desk scale; covered by criteria 7-10"};
  });
  return all ? 0 : 1;
}
