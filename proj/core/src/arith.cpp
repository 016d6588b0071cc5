#include "lmzv/arith.hpp"

#include <limits>

#include "lmzv/error.hpp"

namespace lmzv {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (std::uint64_t d = 3; d <= p / d; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
}

Valuation padic_valuation(const Integer& z, std::uint64_t p) {
  require_prime(p);
  if (z == 0) return Valuation::infinite();
  const Integer prime(static_cast<unsigned long>(p));
  Integer rest;
  const auto v = mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), prime.get_mpz_t());
  return Valuation::finite(static_cast<std::int64_t>(v));
}

Valuation padic_valuation(const Rational& q, std::uint64_t p) {
  require_prime(p);
  if (q.is_zero()) return Valuation::infinite();
  const auto num = padic_valuation(q.numerator(), p);
  const auto den = padic_valuation(q.denominator(), p);
  return Valuation::finite(num.value() - den.value());
}

Integer binomial(std::int64_t a, std::int64_t b) {
  if (a < 0) throw DomainError("binomial: negative top argument");
  if (b < 0 || b > a) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return out;
}

Integer factorial(std::uint64_t k) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(k));
  return out;
}

std::vector<Rational> bernoulli_numbers(std::uint64_t k) {
  // Akiyama–Tanigawa: row transform a[j] <- (j+1)(a[j] - a[j+1]); the head of
  // each round is B_m with B_1 = +1/2, flipped below.
  std::vector<Rational> out;
  out.reserve(k + 1);
  std::vector<Rational> a(k + 1);
  for (std::uint64_t m = 0; m <= k; ++m) {
    a[m] = Rational(Integer(1), Integer(static_cast<unsigned long>(m + 1)));
    for (std::uint64_t j = m; j >= 1; --j) {
      a[j - 1] = Rational(static_cast<std::int64_t>(j)) * (a[j - 1] - a[j]);
    }
    out.push_back(a[0]);
  }
  if (k >= 1) out[1] = -out[1];
  return out;
}

Rational bernoulli(std::uint64_t k) { return bernoulli_numbers(k).back(); }

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exponent) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) {
      throw DomainError("integer power overflows 64 bits");
    }
    out *= base;
  }
  return out;
}

}  // namespace lmzv
