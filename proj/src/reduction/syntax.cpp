#include "buchi/reduction/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace buchi::reduction {

SyntaxError::SyntaxError(const std::string& message, SourcePos pos)
    : DomainError("syntax error at line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) +
                  ": " + message),
      pos_(pos) {}

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Equals, Semi, End };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Int:
    case Tok::Ident: return "'" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const SourcePos start = pos;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Int, src.substr(i, j - i), start});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), start});
      advance(j - i);
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '=': kind = Tok::Equals; break;
      case ';': kind = Tok::Semi; break;
      default: throw SyntaxError(std::string("unexpected character '") + c + "'", start);
    }
    out.push_back({kind, std::string(1, c), start});
    advance(1);
  }
  out.push_back({Tok::End, "", pos});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, bool allow_division)
      : toks_(std::move(tokens)), allow_division_(allow_division) {}

  SourceSystem system() {
    SourceSystem sys;
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::Semi) {
        ++at_;
        continue;
      }
      Equation eq;
      eq.pos = peek().pos;
      eq.lhs = expr();
      expect(Tok::Equals, "'='");
      eq.rhs = expr();
      sys.equations.push_back(std::move(eq));
      if (peek().kind != Tok::End) expect(Tok::Semi, "';'");
    }
    if (sys.equations.empty()) throw SyntaxError("no equations", peek().pos);
    sys.variables = std::move(vars_);
    return sys;
  }

  ExprPtr single_expression() {
    ExprPtr e = expr();
    if (peek().kind != Tok::End) throw SyntaxError("unexpected " + describe(peek()), peek().pos);
    return e;
  }

  const std::vector<std::string>& variables() const { return vars_; }

 private:
  const Token& peek() const { return toks_[at_]; }

  void expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) throw SyntaxError("expected " + what + ", found " + describe(peek()), peek().pos);
    ++at_;
  }

  static ExprPtr binary(Expr::Kind kind, SourcePos pos, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->pos = pos;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
  }

  ExprPtr expr() {
    ExprPtr left = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Token op = peek();
      ++at_;
      left = binary(op.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub, op.pos, left, term());
    }
    return left;
  }

  ExprPtr term() {
    ExprPtr left = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const Token op = peek();
      if (op.kind == Tok::Slash && !allow_division_) {
        throw SyntaxError("division is not allowed in equation systems", op.pos);
      }
      ++at_;
      left = binary(op.kind == Tok::Star ? Expr::Kind::Mul : Expr::Kind::Div, op.pos, left, unary());
    }
    return left;
  }

  ExprPtr unary() {
    if (peek().kind == Tok::Minus) {
      const SourcePos pos = peek().pos;
      ++at_;
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Neg;
      e->pos = pos;
      e->lhs = unary();
      return e;
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (peek().kind != Tok::Caret) return base;
    const SourcePos pos = peek().pos;
    ++at_;
    if (peek().kind != Tok::Int) {
      throw SyntaxError("expected a nonnegative integer exponent, found " + describe(peek()), peek().pos);
    }
    const Token exp_tok = peek();
    ++at_;
    Int exponent(exp_tok.text, 10);
    if (exponent > kMaxExponent) {
      throw SyntaxError("exponent " + exp_tok.text + " exceeds the limit of " + std::to_string(kMaxExponent),
                        exp_tok.pos);
    }
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Pow;
    e->pos = pos;
    e->lhs = std::move(base);
    e->exponent = static_cast<unsigned>(exponent.get_ui());
    return e;
  }

  ExprPtr primary() {
    const Token t = peek();
    auto e = std::make_shared<Expr>();
    e->pos = t.pos;
    switch (t.kind) {
      case Tok::Int:
        ++at_;
        e->kind = Expr::Kind::Number;
        e->value = Int(t.text, 10);
        return e;
      case Tok::Ident:
        ++at_;
        e->kind = Expr::Kind::Variable;
        e->name = t.text;
        if (std::find(vars_.begin(), vars_.end(), t.text) == vars_.end()) vars_.push_back(t.text);
        return e;
      case Tok::LParen: {
        ++at_;
        ExprPtr inner = expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        throw SyntaxError("expected an operand, found " + describe(t), t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
  bool allow_division_;
  std::vector<std::string> vars_;
};

MPoly expand(const Expr& e, const std::vector<std::string>& vars) {
  switch (e.kind) {
    case Expr::Kind::Number: return MPoly::constant(vars, Rat(e.value));
    case Expr::Kind::Variable: return MPoly::variable(vars, e.name);
    case Expr::Kind::Neg: return -expand(*e.lhs, vars);
    case Expr::Kind::Add: return expand(*e.lhs, vars) + expand(*e.rhs, vars);
    case Expr::Kind::Sub: return expand(*e.lhs, vars) - expand(*e.rhs, vars);
    case Expr::Kind::Mul: return expand(*e.lhs, vars) * expand(*e.rhs, vars);
    case Expr::Kind::Pow: return expand(*e.lhs, vars).pow(e.exponent);
    case Expr::Kind::Div: break;
  }
  throw SyntaxError("division is not allowed in equation systems", e.pos);
}

UPoly to_upoly(const Expr& e, const std::string& var) {
  switch (e.kind) {
    case Expr::Kind::Number: return UPoly::constant(Rat(e.value));
    case Expr::Kind::Variable:
      if (e.name != var) throw SyntaxError("unknown variable '" + e.name + "', expected '" + var + "'", e.pos);
      return UPoly{0, 1};
    case Expr::Kind::Neg: return -to_upoly(*e.lhs, var);
    case Expr::Kind::Add: return to_upoly(*e.lhs, var) + to_upoly(*e.rhs, var);
    case Expr::Kind::Sub: return to_upoly(*e.lhs, var) - to_upoly(*e.rhs, var);
    case Expr::Kind::Mul: return to_upoly(*e.lhs, var) * to_upoly(*e.rhs, var);
    case Expr::Kind::Pow: return to_upoly(*e.lhs, var).pow(e.exponent);
    case Expr::Kind::Div: {
      UPoly divisor = to_upoly(*e.rhs, var);
      if (!divisor.is_constant() || divisor.is_zero()) {
        throw SyntaxError("only division by a nonzero constant is supported", e.pos);
      }
      return to_upoly(*e.lhs, var) * Rat(1 / divisor.leading());
    }
  }
  throw SyntaxError("unsupported expression", e.pos);
}

}  // namespace

SourceSystem parse(const std::string& text) { return Parser(lex(text), false).system(); }

UPoly parse_upoly(const std::string& text, const std::string& var) {
  Parser parser(lex(text), true);
  ExprPtr e = parser.single_expression();
  return to_upoly(*e, var);
}

std::vector<MPoly> normalized(const SourceSystem& sys) {
  std::vector<MPoly> out;
  for (const auto& eq : sys.equations) out.push_back(expand(*eq.lhs, sys.variables) - expand(*eq.rhs, sys.variables));
  return out;
}

Int evaluate(const Expr& e, const Witness& w) {
  switch (e.kind) {
    case Expr::Kind::Number: return e.value;
    case Expr::Kind::Variable: {
      auto it = w.find(e.name);
      if (it == w.end()) throw DomainError("witness has no value for '" + e.name + "'");
      return it->second;
    }
    case Expr::Kind::Neg: return -evaluate(*e.lhs, w);
    case Expr::Kind::Add: return evaluate(*e.lhs, w) + evaluate(*e.rhs, w);
    case Expr::Kind::Sub: return evaluate(*e.lhs, w) - evaluate(*e.rhs, w);
    case Expr::Kind::Mul: return evaluate(*e.lhs, w) * evaluate(*e.rhs, w);
    case Expr::Kind::Pow: {
      Int out;
      mpz_pow_ui(out.get_mpz_t(), evaluate(*e.lhs, w).get_mpz_t(), e.exponent);
      return out;
    }
    case Expr::Kind::Div: break;
  }
  throw DomainError("division in an integer equation");
}

bool satisfies(const SourceSystem& sys, const Witness& w) {
  return std::all_of(sys.equations.begin(), sys.equations.end(),
                     [&](const Equation& eq) { return evaluate(*eq.lhs, w) == evaluate(*eq.rhs, w); });
}

std::string to_string(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number: return e.value.get_str();
    case Expr::Kind::Variable: return e.name;
    case Expr::Kind::Neg: return "-(" + to_string(*e.lhs) + ")";
    case Expr::Kind::Add: return "(" + to_string(*e.lhs) + " + " + to_string(*e.rhs) + ")";
    case Expr::Kind::Sub: return "(" + to_string(*e.lhs) + " - " + to_string(*e.rhs) + ")";
    case Expr::Kind::Mul: return to_string(*e.lhs) + "*" + to_string(*e.rhs);
    case Expr::Kind::Div: return to_string(*e.lhs) + "/" + to_string(*e.rhs);
    case Expr::Kind::Pow: return "(" + to_string(*e.lhs) + ")^" + std::to_string(e.exponent);
  }
  return {};
}

}  // namespace buchi::reduction
