#include "buchi/exact.hpp"

#include <cctype>
#include <sstream>

namespace buchi {

long PValuation::value() const {
  if (!value_) throw DomainError("valuation of zero is infinite");
  return *value_;
}

PValuation PValuation::operator+(const PValuation& other) const {
  if (prime_ != other.prime_) throw DomainError("valuations for different primes");
  if (!value_ || !other.value_) return infinity(prime_);
  return finite(prime_, *value_ + *other.value_);
}

std::strong_ordering PValuation::operator<=>(const PValuation& other) const {
  if (!value_ && !other.value_) return std::strong_ordering::equal;
  if (!value_) return std::strong_ordering::greater;
  if (!other.value_) return std::strong_ordering::less;
  return *value_ <=> *other.value_;
}

std::string PValuation::str() const {
  return value_ ? std::to_string(*value_) : std::string("INFINITY");
}

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Int isqrt(const Int& n) {
  if (sgn(n) < 0) throw DomainError("isqrt of a negative integer");
  Int root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  return root;
}

bool is_square_int(const Int& n) {
  if (sgn(n) < 0) return false;
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::optional<Rat> is_square_rat(const Rat& q) {
  // mpq values are kept in lowest terms with a positive denominator.
  const Int& num = q.get_num();
  const Int& den = q.get_den();
  if (!is_square_int(num) || !is_square_int(den)) return std::nullopt;
  Rat root(isqrt(num), isqrt(den));
  root.canonicalize();
  return root;
}

long vp_nonzero(const Int& n, unsigned long p) {
  Int rest = abs(n);
  long count = 0;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
    ++count;
  }
  return count;
}

PValuation vp(const Rat& q, unsigned long p) {
  if (!is_prime(p)) throw DomainError("valuation requires a prime, got " + std::to_string(p));
  if (sgn(q) == 0) return PValuation::infinity(p);
  return PValuation::finite(p, vp_nonzero(q.get_num(), p) - vp_nonzero(q.get_den(), p));
}

Int height(const Rat& q) {
  Int num = abs(q.get_num());
  return num > q.get_den() ? num : Int(q.get_den());
}

namespace {

Int parse_integer(const std::string& text) {
  std::size_t start = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) start = 1;
  if (start == text.size()) throw DomainError("malformed rational '" + text + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw DomainError("malformed rational '" + text + "'");
    }
  }
  return Int(text[0] == '+' ? text.substr(1) : text, 10);
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

Rat parse_rational(const std::string& raw) {
  std::string text = trim(raw);
  std::size_t slash = text.find('/');
  if (slash == std::string::npos) return Rat(parse_integer(text));
  Int num = parse_integer(trim(text.substr(0, slash)));
  Int den = parse_integer(trim(text.substr(slash + 1)));
  if (sgn(den) == 0) throw DomainError("zero denominator in '" + text + "'");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

std::vector<Rat> parse_rational_list(const std::string& text) {
  std::vector<Rat> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw DomainError("empty list");
  return out;
}

std::string to_string(const Rat& q) { return q.get_str(); }
std::string to_string(const Int& n) { return n.get_str(); }

Int factorial(unsigned long n) {
  Int out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

}  // namespace buchi
