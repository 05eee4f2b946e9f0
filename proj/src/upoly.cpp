#include "buchi/upoly.hpp"

#include <cstdint>
#include <sstream>

namespace buchi {

UPoly::UPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

UPoly UPoly::constant(const Rat& c) { return UPoly(std::vector<Rat>{c}); }

UPoly UPoly::monomial(const Rat& c, std::size_t degree) {
  std::vector<Rat> coeffs(degree + 1);
  coeffs[degree] = c;
  return UPoly(std::move(coeffs));
}

UPoly UPoly::from_roots(const std::vector<Rat>& roots) {
  UPoly out = constant(1);
  for (const auto& r : roots) out *= UPoly{-r, 1};
  return out;
}

void UPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rat UPoly::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rat(0); }

const Rat& UPoly::leading() const {
  if (coeffs_.empty()) throw DomainError("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

std::size_t UPoly::order_at_zero() const {
  if (is_zero()) throw DomainError("order at zero of the zero polynomial");
  std::size_t k = 0;
  while (sgn(coeffs_[k]) == 0) ++k;
  return k;
}

Rat UPoly::operator()(const Rat& z) const {
  Rat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

UPoly UPoly::operator-() const {
  UPoly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const UPoly& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rat> out(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const Rat& c) {
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

UPoly UPoly::pow(unsigned exponent) const {
  UPoly result = constant(1);
  UPoly base = *this;
  while (exponent) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent) base *= base;
  }
  return result;
}

UPoly UPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rat> out(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
  return UPoly(std::move(out));
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  UPoly out = *this;
  Rat inv = 1 / leading();
  return out *= inv;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  UPoly rem = a;
  if (a.degree() < b.degree()) return {UPoly{}, rem};
  std::vector<Rat> quot(a.coeffs_.size() - b.coeffs_.size() + 1);
  const Rat lead_inv = 1 / b.leading();
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    std::size_t shift = static_cast<std::size_t>(rem.degree() - b.degree());
    Rat factor = rem.leading() * lead_inv;
    quot[shift] = factor;
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) rem.coeffs_[k + shift] -= factor * b.coeffs_[k];
    rem.trim();
  }
  return {UPoly(std::move(quot)), rem};
}

namespace {

using IntPoly = std::vector<Int>;

void trim_int(IntPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

/// Integer multiple of a with coprime coefficients and positive leading term.
IntPoly primitive_part(const UPoly& a) {
  Int lcm = 1;
  for (const auto& c : a.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  IntPoly out;
  Int content = 0;
  for (const auto& c : a.coeffs()) {
    out.push_back(c.get_num() * (lcm / c.get_den()));
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out.back().get_mpz_t());
  }
  if (sgn(a.leading()) < 0) content = -content;
  for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
  return out;
}

void make_primitive(IntPoly& a) {
  Int content = 0;
  for (const auto& c : a) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  if (sgn(a.back()) < 0) content = -content;
  for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
}

/// Degree of gcd(a, b) over Z/p, or -1 when p divides a leading coefficient
/// (the reduction then says nothing about the gcd over Q).
long gcd_degree_mod(const IntPoly& a, const IntPoly& b, std::uint64_t p) {
  auto reduce = [p](const IntPoly& in) {
    std::vector<std::uint64_t> out;
    for (const auto& c : in) out.push_back(mpz_fdiv_ui(c.get_mpz_t(), p));
    return out;
  };
  auto mul = [p](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % p);
  };
  auto inverse = [&](std::uint64_t x) {
    std::uint64_t result = 1, e = p - 2;
    while (e) {
      if (e & 1U) result = mul(result, x);
      x = mul(x, x);
      e >>= 1U;
    }
    return result;
  };
  auto strip = [](std::vector<std::uint64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  auto x = reduce(a);
  auto y = reduce(b);
  if (x.back() == 0 || y.back() == 0) return -1;
  while (!y.empty()) {
    // x <- x mod y
    const std::uint64_t inv = inverse(y.back());
    while (x.size() >= y.size()) {
      const std::uint64_t factor = mul(x.back(), inv);
      const std::size_t shift = x.size() - y.size();
      for (std::size_t k = 0; k < y.size(); ++k) x[k + shift] = (x[k + shift] + p - mul(factor, y[k])) % p;
      strip(x);
      if (x.empty()) break;
    }
    std::swap(x, y);
  }
  return static_cast<long>(x.size()) - 1;
}

/// Pseudo-remainder of a by b, made primitive.
IntPoly primitive_prem(IntPoly a, const IntPoly& b) {
  const Int& lb = b.back();
  while (a.size() >= b.size()) {
    const Int la = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& c : a) c *= lb;
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= la * b[k];
    trim_int(a);
  }
  if (!a.empty()) make_primitive(a);
  return a;
}

}  // namespace

UPoly UPoly::gcd(UPoly a, UPoly b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return constant(1);
  IntPoly x = primitive_part(a);
  IntPoly y = primitive_part(b);
  // Coprime modulo a prime not dividing either leading coefficient implies
  // coprime over Q; this settles the common case without coefficient growth.
  for (std::uint64_t p : {std::uint64_t{4611686018427387847ULL}, std::uint64_t{2305843009213693951ULL}}) {
    const long d = gcd_degree_mod(x, y, p);
    if (d == 0) return constant(1);
    if (d > 0) break;
  }
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    IntPoly r = primitive_prem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  std::vector<Rat> coeffs(x.begin(), x.end());
  return UPoly(std::move(coeffs)).monic();
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Rat& c = coeffs_[k];
    if (sgn(c) == 0) continue;
    Rat mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = mag == 1;
    if (k == 0 || !unit) out << mag.get_str();
    if (k > 0) {
      if (!unit) out << "*";
      out << var;
      if (k > 1) out << "^" << k;
    }
  }
  return out.str();
}

}  // namespace buchi
