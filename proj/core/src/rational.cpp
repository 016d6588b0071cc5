#include "lmzv/rational.hpp"

#include <cctype>
#include <ostream>

#include "lmzv/error.hpp"

namespace lmzv {

namespace {

bool is_decimal_integer(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!is_decimal_integer(num)) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  if (slash == std::string_view::npos) return Rational(Integer(std::string(num)));
  const std::string_view den = text.substr(slash + 1);
  if (!is_decimal_integer(den) || den.front() == '-') {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  const Integer d(std::string{den});
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(Integer(std::string(num)), d);
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  value_ /= o.value_;
  return *this;
}

void Rational::add_product(const Rational& a, const Rational& b) {
  mpq_t tmp;
  mpq_init(tmp);
  mpq_mul(tmp, a.value_.get_mpq_t(), b.value_.get_mpq_t());
  mpq_add(value_.get_mpq_t(), value_.get_mpq_t(), tmp);
  mpq_clear(tmp);
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational Rational::pow(std::int64_t exponent) const {
  if (exponent < 0) {
    if (is_zero()) throw DomainError("zero raised to a negative power");
    return Rational(1) / pow(-exponent);
  }
  Integer num;
  Integer den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(num, den);
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

}  // namespace lmzv
