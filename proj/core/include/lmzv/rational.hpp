#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace lmzv {

using Integer = mpz_class;

/// Exact rational number in lowest terms with a positive denominator.
///
/// Text form is "num/den", or just "num" when the denominator is 1; zero is
/// "0". This is the scalar format used by every JSON file the library reads
/// or writes.
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T value) : value_(to_integer(value)) {}  // NOLINT(google-explicit-constructor)

  Rational(const Integer& value) : value_(value) {}  // NOLINT(google-explicit-constructor)

  /// Throws DomainError when `den` is zero.
  Rational(const Integer& num, const Integer& den);

  /// Parses "num" or "num/den" (optional leading '-', ASCII digits only).
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return value_; }

  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  std::string to_string() const;

  Rational& operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
  }
  /// Throws DomainError on division by zero.
  Rational& operator/=(const Rational& o);

  /// this += a * b, without a temporary.
  void add_product(const Rational& a, const Rational& b);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Integer power; negative exponents invert (DomainError for 0^-k).
  Rational pow(std::int64_t exponent) const;

 private:
  template <std::integral T>
  static Integer to_integer(T value) {
    if constexpr (std::is_signed_v<T>) {
      return Integer(static_cast<long>(value));
    } else {
      return Integer(static_cast<unsigned long>(value));
    }
  }

  explicit Rational(mpq_class v) : value_(std::move(v)) {}

  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

}  // namespace lmzv
