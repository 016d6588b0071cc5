#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lmzv/rational.hpp"

namespace lmzv {

/// p-adic valuation: an integer, or +infinity for zero.
class Valuation {
 public:
  static Valuation infinite() { return Valuation(); }
  static Valuation finite(std::int64_t v) { return Valuation(v); }

  bool is_infinite() const { return !value_.has_value(); }
  /// Precondition: !is_infinite().
  std::int64_t value() const { return *value_; }

  /// True when the valuation is at least `threshold` (+inf always is).
  bool at_least(std::int64_t threshold) const { return is_infinite() || *value_ >= threshold; }

  std::string to_string() const { return is_infinite() ? "+inf" : std::to_string(*value_); }

  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.is_infinite() || b.is_infinite()) return infinite();
    return finite(*a.value_ + *b.value_);
  }
  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend bool operator<(const Valuation& a, const Valuation& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return *a.value_ < *b.value_;
  }
  friend bool operator<=(const Valuation& a, const Valuation& b) { return !(b < a); }

 private:
  Valuation() = default;
  explicit Valuation(std::int64_t v) : value_(v) {}
  std::optional<std::int64_t> value_;
};

/// Deterministic trial-division primality test.
bool is_prime(std::uint64_t p);

/// Throws DomainError unless p is prime.
void require_prime(std::uint64_t p);

/// v_p(q), with q = p^v * (unit of Z_(p)). Throws DomainError for non-prime p.
Valuation padic_valuation(const Rational& q, std::uint64_t p);
Valuation padic_valuation(const Integer& z, std::uint64_t p);

/// C(a, b) for a >= 0; zero when b < 0 or b > a.
Integer binomial(std::int64_t a, std::int64_t b);

Integer factorial(std::uint64_t k);

/// Bernoulli number B_k with the convention B_1 = -1/2.
Rational bernoulli(std::uint64_t k);

/// B_0 .. B_k inclusive, same convention.
std::vector<Rational> bernoulli_numbers(std::uint64_t k);

/// Integer power p^e with overflow detection (DomainError on overflow).
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exponent);

}  // namespace lmzv
