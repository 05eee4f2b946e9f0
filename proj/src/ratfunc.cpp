#include "buchi/ratfunc.hpp"

namespace buchi {

RatFunc::RatFunc(const UPoly& num) : num_(num), den_(UPoly::constant(1)) {}

RatFunc::RatFunc(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  canonicalize();
}

void RatFunc::canonicalize() {
  if (num_.is_zero()) {
    den_ = UPoly::constant(1);
    return;
  }
  UPoly g = UPoly::gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = UPoly::divmod(num_, g).first;
    den_ = UPoly::divmod(den_, g).first;
  }
  Rat lead = den_.leading();
  if (lead != 1) {
    Rat inv = 1 / lead;
    num_ *= inv;
    den_ *= inv;
  }
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw DomainError("division by the zero function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::pow(unsigned exponent) const {
  return RatFunc(num_.pow(exponent), den_.pow(exponent));
}

RatFunc RatFunc::derivative() const {
  // (n/d)' = (n'd - nd') / d^2
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc RatFunc::derivative(unsigned n) const {
  if (n == 0) throw DomainError("derivative order must be positive");
  RatFunc out = *this;
  for (unsigned k = 0; k < n; ++k) out = out.derivative();
  return out;
}

std::string RatFunc::str(const std::string& var) const {
  if (den_ == UPoly::constant(1)) return num_.str(var);
  return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

RatFunc ratfunc_arith(const RatFunc& a, const RatFunc& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  throw DomainError("unknown arithmetic operation");
}

RatFunc derivative(const RatFunc& f, unsigned n) { return f.derivative(n); }

}  // namespace buchi
