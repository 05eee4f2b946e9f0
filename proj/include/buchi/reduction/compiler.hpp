#pragma once

// Compiles integer polynomial systems to diagonal quadratic systems.
//
// Pipeline:
//   parse -> lower_tac -> eliminate_mul -> encode_square (per squaring)
//
// The target only contains linear equations and equations u = w^2 whose w
// occurs nowhere else, i.e. linear conditions plus "u is a square".
// Every source solution lifts to a target solution. The converse holds for
// gadget length M whenever every length-M integer sequence of squares with
// second difference 2 consists of consecutive squares; that statement is
// open for every M, so each emitted system carries a banner saying so.

#include "buchi/reduction/syntax.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace buchi::reduction {

/// sum coeffs[v] * v + constant.
struct Affine {
  std::map<std::string, Int> coeffs;
  Int constant;

  bool is_constant() const { return coeffs.empty(); }
  /// Name of v when the form is exactly 1*v.
  std::optional<std::string> as_variable() const;
  Int evaluate(const Witness& w) const;

  Affine& operator+=(const Affine& o);
  Affine& operator-=(const Affine& o);
  Affine& operator*=(const Int& c);
  friend Affine operator+(Affine a, const Affine& b) { return a += b; }
  friend Affine operator-(Affine a, const Affine& b) { return a -= b; }
  friend Affine operator*(Affine a, const Int& c) { return a *= c; }

  static Affine variable(const std::string& name);
  static Affine constant_of(const Int& c);
  std::string str() const;
  bool operator==(const Affine&) const = default;
};

/// dest := affine   or   dest := lhs * rhs.
struct TacInstr {
  enum class Kind { Linear, Mul };
  Kind kind;
  std::string dest;
  Affine value;
  std::string lhs;
  std::string rhs;
};

struct TACProgram {
  std::vector<std::string> source_vars;
  std::vector<std::string> temporaries;
  std::vector<TacInstr> instrs;
  /// Each constraint reads "affine = 0".
  std::vector<Affine> constraints;

  std::size_t multiplications() const;
  std::string str() const;
};

/// q = t^2.
struct Squaring {
  std::string q;
  std::string t;
};

/// Record of how one multiplication dest := lhs * rhs was removed. For a
/// product of distinct variables s = lhs + rhs and
/// q_s = q_lhs + q_rhs + 2 dest; for a square only q_lhs is used.
struct MulElimination {
  std::string dest;
  std::string lhs;
  std::string rhs;
  std::string s;
  std::string q_s;
  std::string q_lhs;
  std::string q_rhs;
  bool is_square = false;
};

/// One variable defined from earlier ones, in evaluation order:
///   Linear  dest := value
///   Square  dest := t^2
///   Half    dest := (q_s - q_a - q_b) / 2
/// Linear and Half stand for linear equations of the intermediate system,
/// Square for a squaring constraint.
struct Definition {
  enum class Kind { Linear, Square, Half };
  Kind kind;
  std::string dest;
  Affine value;
  std::string t;
  std::string q_s;
  std::string q_a;
  std::string q_b;
};

struct IntermediateSystem {
  TACProgram program;
  std::vector<std::string> vars;
  std::vector<Definition> schedule;
  /// Constraints of the program, each "affine = 0".
  std::vector<Affine> constraints;
  std::vector<MulElimination> eliminations;
  /// Temporaries introduced by this pass.
  std::vector<std::string> temporaries;

  std::vector<Squaring> squarings() const;
  /// Constraints followed by the equations of Linear and Half definitions.
  std::vector<Affine> linear() const;
};

/// Equations of one squaring gadget for q = t^2.
struct GadgetEncoding {
  std::string t;
  std::string q;
  std::vector<std::string> u;
  std::vector<std::string> w;
  std::vector<Affine> linear;
  /// (u_i, w_i) meaning u_i = w_i^2.
  std::vector<std::pair<std::string, std::string>> squares;
};

/// Deterministic fresh names: _t<k>, _u<k>, _w<k>, one counter per prefix.
class NameSupply {
 public:
  std::string fresh(const std::string& prefix);

 private:
  std::map<std::string, std::size_t> counters_;
};

TACProgram lower_tac(const SourceSystem& sys, NameSupply& names);
IntermediateSystem eliminate_mul(const TACProgram& prog, NameSupply& names);
/// Throws DomainError for M < 3.
GadgetEncoding encode_square(const std::string& t, const std::string& q, int M, NameSupply& names);

/// Variable counts reported by the compiler.
struct CompileCounters {
  std::size_t source_vars = 0;
  std::size_t tac_temporaries = 0;
  std::size_t elimination_temporaries = 0;
  std::size_t multiplications = 0;
  std::size_t squarings = 0;
  std::size_t gadget_vars = 0;
};

struct TargetSystem {
  std::vector<std::string> vars;
  std::vector<Affine> linear;
  /// (lhs, rhs) meaning lhs = rhs^2.
  std::vector<std::pair<std::string, std::string>> squares;
  int buchi_m = 5;

  IntermediateSystem intermediate;
  std::vector<GadgetEncoding> gadgets;
  CompileCounters counters;
};

inline constexpr int kDefaultGadgetLength = 5;

TargetSystem compile(const SourceSystem& sys, int M = kDefaultGadgetLength);

struct ValidationResult {
  bool ok = true;
  std::string message;
};

/// Every equation has total degree <= 2 with pure squares as its only
/// quadratic monomials, and each square root variable w occurs in exactly
/// one equation (u = w^2).
ValidationResult validate_diagonal(const TargetSystem& target);

bool satisfies(const TargetSystem& target, const Witness& w);

/// Lifts a source solution to a target solution; throws DomainError when w
/// does not satisfy sys.
Witness translate_witness(const SourceSystem& sys, const TargetSystem& target, const Witness& w);

/// Gadget outcomes with every |w_i| <= bound: t -> set of q for which the
/// length-M gadget with parameters (t, q) has a solution.
std::map<Int, std::vector<Int>> gadget_outcomes(int M, long bound);

struct EquisatOptions {
  unsigned threads = 1;
  /// Exhaustive source enumeration is refused above this many assignments.
  std::size_t max_assignments = 5'000'000;
  /// Backward check is skipped when the derived gadget bound exceeds this.
  long max_gadget_bound = 4000;
};

struct EquisatReport {
  long box = 0;
  std::size_t assignments = 0;
  std::vector<Witness> source_solutions;
  std::size_t lifted = 0;
  std::vector<Witness> lift_failures;

  bool backward_checked = false;
  long gadget_bound = 0;
  std::size_t gadget_solutions = 0;
  std::size_t nontrivial_gadget_solutions = 0;
  /// Target solutions whose source part lies in the box and whose gadget
  /// witnesses satisfy |w_i| <= gadget_bound.
  std::size_t target_solutions = 0;
  std::vector<Witness> projection_failures;
  /// Branches that needed a gadget outcome for |t| beyond the table.
  std::size_t uncovered = 0;

  bool pass() const { return lift_failures.empty() && projection_failures.empty(); }
};

EquisatReport bounded_equisat(const SourceSystem& sys, const TargetSystem& target, long box,
                              const EquisatOptions& options = {});

std::string conditional_banner(int M);
std::string to_text(const TargetSystem& target);
/// {vars, linear:[{coeffs, const}], squares:[{lhs, rhs}], meta:{M, conditional}}
std::string to_json(const TargetSystem& target);

}  // namespace buchi::reduction
