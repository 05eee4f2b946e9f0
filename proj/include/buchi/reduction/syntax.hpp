#pragma once

// Lexer, parser and AST for integer polynomial equation systems:
//
//   system   := equation (';' equation)* [';']
//   equation := expr '=' expr
//   expr     := term (('+' | '-') term)*
//   term     := unary (('*' | '/') unary)*        '/' only in polynomial mode
//   unary    := '-' unary | power
//   power    := primary ['^' INTEGER]
//   primary  := INTEGER | IDENT | '(' expr ')'
//
// '#' starts a comment that runs to the end of the line.

#include "buchi/exact.hpp"
#include "buchi/mpoly.hpp"
#include "buchi/upoly.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace buchi::reduction {

struct SourcePos {
  int line = 1;
  int column = 1;
};

class SyntaxError : public DomainError {
 public:
  SyntaxError(const std::string& message, SourcePos pos);
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind;
  SourcePos pos;
  Int value;             // Number
  std::string name;      // Variable
  ExprPtr lhs;           // Neg operand, binary left, Pow base
  ExprPtr rhs;           // binary right
  unsigned exponent = 0; // Pow
};

struct Equation {
  ExprPtr lhs;
  ExprPtr rhs;
  SourcePos pos;
};

struct SourceSystem {
  std::vector<Equation> equations;
  /// Variables in order of first appearance.
  std::vector<std::string> variables;
};

using Witness = std::map<std::string, Int>;

/// Largest exponent accepted after '^'.
inline constexpr unsigned kMaxExponent = 64;

/// Parses a system; throws SyntaxError with line and column.
SourceSystem parse(const std::string& text);

/// Parses one expression in `var` with rational constants and division by
/// constants, e.g. "1+2*z" or "(z^2-1)/3".
UPoly parse_upoly(const std::string& text, const std::string& var = "z");

/// lhs - rhs of every equation, expanded over the system's variables.
std::vector<MPoly> normalized(const SourceSystem& sys);

Int evaluate(const Expr& e, const Witness& w);
/// True iff every equation holds; throws DomainError when w misses a variable.
bool satisfies(const SourceSystem& sys, const Witness& w);

std::string to_string(const Expr& e);

}  // namespace buchi::reduction
