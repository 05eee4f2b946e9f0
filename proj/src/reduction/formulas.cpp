#include "buchi/reduction/formulas.hpp"

#include "buchi/surfaces.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace buchi::reduction {

namespace {

const std::string kAnd = " ∧ ";
const std::string kMinus = "−";

std::string u(int i) { return "u_" + std::to_string(i); }

std::string f_line(int M) {
  std::string out = "F[x,y]: ";
  for (int i = 1; i <= M; ++i) out += "∃" + u(i);
  out += " (";
  for (int i = 1; i <= M; ++i) out += (i > 1 ? kAnd : "") + "P_2(" + u(i) + ")";
  for (int i = 2; i <= M - 1; ++i) {
    out += kAnd + u(i - 1) + " + " + u(i + 1) + " = 2" + u(i) + " + 2";
  }
  out += kAnd + "x = " + u(1) + kAnd + "2y + 1 = " + u(2) + kMinus + u(1) + ")";
  return out;
}

const std::vector<std::string> kOrientationNote = {
    "# read literally, u_i = (s+i-1)^2 gives x = u_1 = s^2 and y = s, i.e. x = y^2;",
    "# the compiler's squaring gadget uses exactly this orientation (q = u_1, 2t + 1 = u_2 - u_1 for q = t^2)",
};

// c x with c rational, as "3c_1", "−c_2", "(1/2)c_3".
std::string scaled(const Rat& c, const std::string& var) {
  const Rat mag = abs(c);
  std::string coeff;
  if (mag != 1) coeff = mag.get_den() == 1 ? mag.get_str() : "(" + mag.get_str() + ")";
  return coeff + var;
}

std::string linear_text(const Rat& constant, const std::vector<std::pair<Rat, std::string>>& terms,
                        bool constant_last = false) {
  std::string out;
  auto push = [&](const Rat& c, const std::string& body) {
    if (out.empty()) {
      out += (sgn(c) < 0 ? kMinus : "") + body;
    } else {
      out += (sgn(c) < 0 ? " " + kMinus + " " : " + ") + body;
    }
  };
  if (sgn(constant) != 0 && !constant_last) push(constant, Rat(abs(constant)).get_str());
  for (const auto& [c, v] : terms) {
    if (sgn(c) != 0) push(c, scaled(c, v));
  }
  if (sgn(constant) != 0 && constant_last) push(constant, Rat(abs(constant)).get_str());
  return out.empty() ? "0" : out;
}

std::string c(std::size_t i) { return "c_" + std::to_string(i); }

std::string psi(const std::vector<Rat>& deltas) {
  const BuchiSurface surface(deltas);
  const std::size_t n = surface.n();
  const Rat& d2 = surface.delta(2);

  // With c_j = x_j^2 and x_0 = 1 every defining form is linear in c.
  std::string inner;
  for (std::size_t i = 1; i <= n; ++i) inner += (i > 1 ? kAnd : "") + "P_2(" + c(i) + ")";
  for (std::size_t i = 3; i <= n; ++i) {
    const Rat& di = surface.delta(i);
    const std::string lhs = linear_text(0, {{d2, c(i)}});
    const std::string rhs = linear_text(di * d2 * (di - d2), {{-(di - d2), c(1)}, {di, c(2)}});
    inner += kAnd + lhs + " = " + rhs;
  }

  std::string args;
  for (std::size_t i = 1; i <= n; ++i) args += (i > 1 ? "," : "") + c(i);
  std::string binders;
  for (std::size_t i = 1; i <= n; ++i) binders += "∃" + c(i);

  std::string out;
  out += "ψ(" + args + "): " + inner + kAnd + "[1:√c_1:…:√c_" + std::to_string(n) + "] lies on a trivial line\n";
  out += "Ψ(x,y): " + binders + " (ψ(" + args + ")" + kAnd + c(2) + " " + kMinus + " " + c(1) + " = " +
         linear_text(d2 * d2, {{2 * d2, "x"}}, true) + kAnd + "y = " + c(1) + ")\n";
  out += "# deltas:";
  for (const auto& d : deltas) out += " " + d.get_str();
  out += "\n";
  out += "# the closing parenthesis after \"y = c_1\" is missing in the original statement and has been added\n";
  out += "# the trivial-line clause is definable only under a bound on integer points of X_M; it is kept symbolic\n";
  return out;
}

}  // namespace

std::optional<FormulaMode> parse_formula_mode(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (lower == "f") return FormulaMode::F;
  if (lower == "g") return FormulaMode::G;
  if (lower == "h") return FormulaMode::H;
  if (lower == "psi") return FormulaMode::Psi;
  return std::nullopt;
}

std::string print_formulas(FormulaMode mode, int M, const std::vector<Rat>& deltas) {
  if (M < 3) throw DomainError("gadget length M must be at least 3, got " + std::to_string(M));
  if (mode == FormulaMode::Psi) {
    if (deltas.empty()) throw DomainError("Psi needs the deltas of a Büchi surface");
    return psi(deltas);
  }
  std::string out = f_line(M) + "\n";
  if (mode == FormulaMode::G || mode == FormulaMode::H) out += "G[x,y]: F[x,y]" + kAnd + "F[zx,z^2y]\n";
  if (mode == FormulaMode::H) out += "H[x,y,w]: ∃u∃v (G[x+y,u]" + kAnd + "G[x" + kMinus + "y,v]" + kAnd + "u = v+4w)\n";
  for (const auto& line : kOrientationNote) out += line + "\n";
  if (mode != FormulaMode::F) out += "# zx stands for f_z(x) and z^2y for f_z(f_z(y)), with f_z interpreted as y = zx\n";
  out += "# M = " + std::to_string(M) + "\n";
  return out;
}

}  // namespace buchi::reduction
