#include "buchi/mpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace buchi {

MPoly::MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

MPoly MPoly::constant(const std::vector<std::string>& vars, const Rat& c) {
  MPoly out(vars);
  out.add_term(Exponents(vars.size(), 0), c);
  return out;
}

MPoly MPoly::variable(const std::vector<std::string>& vars, const std::string& name) {
  MPoly out(vars);
  Exponents e(vars.size(), 0);
  e[out.index_of(name)] = 1;
  out.add_term(e, 1);
  return out;
}

std::size_t MPoly::index_of(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) throw DomainError("unknown variable '" + name + "'");
  return static_cast<std::size_t>(it - vars_.begin());
}

unsigned MPoly::total_degree() const {
  unsigned best = 0;
  for (const auto& [e, c] : terms_) best = std::max(best, std::accumulate(e.begin(), e.end(), 0U));
  return best;
}

void MPoly::check_compatible(const MPoly& o) const {
  if (vars_ != o.vars_) throw DomainError("polynomials over different variable lists");
}

void MPoly::add_term(const Exponents& e, const Rat& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

MPoly MPoly::operator-() const {
  MPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  a.check_compatible(b);
  MPoly out(a.vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      MPoly::Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MPoly operator*(MPoly a, const Rat& c) {
  if (sgn(c) == 0) {
    a.terms_.clear();
    return a;
  }
  for (auto& [e, coef] : a.terms_) coef *= c;
  return a;
}

MPoly operator+(MPoly a, const Rat& c) {
  a.add_term(MPoly::Exponents(a.vars_.size(), 0), c);
  return a;
}

MPoly MPoly::pow(unsigned exponent) const {
  MPoly result = constant(vars_, 1);
  MPoly base = *this;
  while (exponent) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent) base = base * base;
  }
  return result;
}

MPoly MPoly::substitute(const std::string& name, const MPoly& value) const {
  check_compatible(value);
  const std::size_t idx = index_of(name);
  MPoly out(vars_);
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    unsigned k = rest[idx];
    rest[idx] = 0;
    MPoly term(vars_);
    term.add_term(rest, c);
    out += term * value.pow(k);
  }
  return out;
}

MPoly MPoly::reduce_square(const std::string& name, const MPoly& square_value) const {
  check_compatible(square_value);
  const std::size_t idx = index_of(name);
  MPoly out(vars_);
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    unsigned k = rest[idx];
    rest[idx] = k % 2;
    MPoly term(vars_);
    term.add_term(rest, c);
    out += term * square_value.pow(k / 2);
  }
  // square_value may itself mention `name`; iterate until stable.
  for (const auto& [e, c] : out.terms_) {
    if (e[idx] > 1) return out.reduce_square(name, square_value);
  }
  return out;
}

Rat MPoly::evaluate(const std::map<std::string, Rat>& point) const {
  std::vector<Rat> values(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = point.find(vars_[i]);
    if (it == point.end()) throw DomainError("no value for variable '" + vars_[i] + "'");
    values[i] = it->second;
  }
  Rat acc = 0;
  for (const auto& [e, c] : terms_) {
    Rat term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned k = 0; k < e[i]; ++k) term *= values[i];
    }
    acc += term;
  }
  return acc;
}

std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) out << " + ";
    first = false;
    out << c.get_str();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      out << "*" << vars_[i];
      if (e[i] > 1) out << "^" << e[i];
    }
  }
  return out.str();
}

bool mpoly_identity_equal(const MPoly& lhs, const MPoly& rhs) {
  if (lhs.vars() != rhs.vars()) throw DomainError("identity check over mismatched variables");
  return (lhs - rhs).is_zero();
}

}  // namespace buchi
