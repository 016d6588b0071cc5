#include "lmzv/measures.hpp"

#include <algorithm>
#include <string>

#include "lmzv/arith.hpp"
#include "lmzv/error.hpp"

namespace lmzv {

LevelMeasure::LevelMeasure(ResidueGrid grid) : grid_(grid), values_(grid.size()) {}

LevelMeasure::LevelMeasure(ResidueGrid grid, std::vector<Rational> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw DomainError("measure at p=" + std::to_string(grid_.prime()) + " n=" + std::to_string(grid_.level()) +
                      " r=" + std::to_string(grid_.depth()) + " needs " + std::to_string(grid_.size()) +
                      " values, got " + std::to_string(values_.size()));
  }
}

LevelMeasure LevelMeasure::constant(const ResidueGrid& grid, const Rational& c) {
  return LevelMeasure(grid, std::vector<Rational>(grid.size(), c));
}

LevelMeasure LevelMeasure::delta(const ResidueGrid& grid, const Cell& at, const Rational& mass) {
  LevelMeasure mu(grid);
  mu[grid.index(at)] = mass;
  return mu;
}

bool LevelMeasure::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v.is_zero(); });
}

bool LevelMeasure::is_integer_valued() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v.is_integer(); });
}

LevelMeasure& LevelMeasure::operator+=(const LevelMeasure& o) {
  if (!(grid_ == o.grid_)) throw DomainError("adding measures on different grids");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

LevelMeasure& LevelMeasure::operator-=(const LevelMeasure& o) {
  if (!(grid_ == o.grid_)) throw DomainError("subtracting measures on different grids");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

LevelMeasure& LevelMeasure::operator*=(const Rational& c) {
  for (auto& v : values_) v *= c;
  return *this;
}

LevelMeasure as_measure(const LambdaTable& t) { return LevelMeasure(t.grid(), t.values()); }
LambdaTable as_table(const LevelMeasure& mu) { return LambdaTable(mu.grid(), mu.values()); }

Integer ExponentWord::factorial_product() const {
  Integer out = 1;
  for (auto n : exponents) out *= factorial(n);
  return out;
}

Integer ExponentWord::integrand(std::span<const Integer> x) const {
  const std::size_t r = depth();
  if (exponents.empty() || x.size() != r) throw DomainError("integrand arity does not match the exponent word");
  Integer out = 1;
  Integer factor;
  auto mul_pow = [&](const Integer& base, std::uint64_t e) {
    if (e == 0) return;
    mpz_pow_ui(factor.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    out *= factor;
  };
  mul_pow(Integer(-x[0]), exponents[0]);
  for (std::size_t k = 1; k < r; ++k) mul_pow(Integer(x[k - 1] - x[k]), exponents[k]);
  mul_pow(x[r - 1], exponents[r]);
  return out;
}

LevelMeasure project(const LevelMeasure& mu) {
  const ResidueGrid& g = mu.grid();
  if (g.level() == 0) throw DomainError("cannot project a level-0 measure");
  LevelMeasure out(g.coarser());
  for (std::size_t i = 0; i < g.size(); ++i) out[g.reduce(i)] += mu[i];
  return out;
}

LevelMeasure affine_pushforward(const LevelMeasure& mu, int sign, std::int64_t shift) {
  if (sign != 1 && sign != -1) throw DomainError("affine map sign must be +1 or -1");
  const ResidueGrid& g = mu.grid();
  LevelMeasure out(g);
  // Mass at i moves to sign*i + shift.
  for (std::size_t i = 0; i < g.size(); ++i) out[g.affine_image(i, sign, shift)] = mu[i];
  return out;
}

namespace {

void check_coset(const ResidueGrid& g, const Coset& cs) {
  if (cs.modulus_level > g.level()) {
    throw DomainError("coset modulus p^" + std::to_string(cs.modulus_level) + " exceeds measure level " +
                      std::to_string(g.level()));
  }
  if (cs.base.size() != g.depth()) throw DomainError("coset base has the wrong number of coordinates");
}

}  // namespace

Rational integrate(const LevelMeasure& mu, const std::optional<Coset>& coset,
                   const std::function<Integer(std::span<const Integer>)>& f) {
  const ResidueGrid& g = mu.grid();
  const std::size_t r = g.depth();
  std::uint64_t coset_modulus = 1;
  if (coset) {
    check_coset(g, *coset);
    coset_modulus = checked_pow(g.prime(), coset->modulus_level);
  }
  // Walk only the members of the coset: coordinate k runs over
  // base_k mod p^m + t p^m for t < p^(n-m).
  const std::uint64_t steps = g.modulus() / coset_modulus;
  Cell start(r, 0);
  if (coset) {
    for (std::size_t k = 0; k < r; ++k) start[k] = coset->base[k] % coset_modulus;
  }
  Rational total;
  std::vector<Integer> lift(r);
  std::vector<std::uint64_t> t(r, 0);
  Cell cell = start;
  while (true) {
    const Rational& value = mu[g.index(cell)];
    if (!value.is_zero()) {
      for (std::size_t k = 0; k < r; ++k) lift[k] = Integer(static_cast<unsigned long>(cell[k]));
      total.add_product(Rational(f(lift)), value);
    }
    std::size_t k = r;
    while (k > 0) {
      --k;
      if (++t[k] < steps) {
        cell[k] += coset_modulus;
        break;
      }
      t[k] = 0;
      cell[k] = start[k];
      if (k == 0) return total;
    }
  }
}

Rational moment(const LevelMeasure& mu, const ExponentWord& e) {
  if (e.depth() != mu.grid().depth()) throw DomainError("exponent word depth does not match the measure");
  return integrate(mu, std::nullopt, [&](std::span<const Integer> x) { return e.integrand(x); });
}

Rational coset_moment(const LevelMeasure& mu, const Coset& coset, const ExponentWord& e) {
  if (e.depth() != mu.grid().depth()) throw DomainError("exponent word depth does not match the measure");
  return integrate(mu, coset, [&](std::span<const Integer> x) { return e.integrand(x); });
}

Rational lambda_coefficient(const LevelMeasure& mu, const ExponentWord& e) {
  return moment(mu, e) / Rational(e.factorial_product());
}

Rational coset_lambda_coefficient(const LevelMeasure& mu, const Coset& coset, const ExponentWord& e) {
  return coset_moment(mu, coset, e) / Rational(e.factorial_product());
}

Rational moment_with_lifts(const LevelMeasure& mu, const ExponentWord& e,
                           std::span<const std::int64_t> lift_multiples) {
  const ResidueGrid& g = mu.grid();
  if (e.depth() != g.depth()) throw DomainError("exponent word depth does not match the measure");
  if (lift_multiples.size() != g.size() * g.depth()) throw DomainError("need r lift multiples per cell");
  const Integer modulus(static_cast<unsigned long>(g.modulus()));
  Rational total;
  std::vector<Integer> lift(g.depth());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Cell cell = g.cell(i);
    for (std::size_t k = 0; k < cell.size(); ++k) {
      lift[k] = Integer(static_cast<unsigned long>(cell[k])) +
                Integer(static_cast<long>(lift_multiples[i * g.depth() + k])) * modulus;
    }
    total.add_product(Rational(e.integrand(lift)), mu[i]);
  }
  return total;
}

LevelMeasure four_term(const LevelMeasure& mu) {
  const ResidueGrid& g = mu.grid();
  LevelMeasure out(g);
  for (std::size_t j = 0; j < g.size(); ++j) {
    Rational v = mu[j];
    v -= mu[g.affine_image(j, -1, 0)];
    v += mu[g.affine_image(j, -1, 1)];
    v -= mu[g.affine_image(j, 1, -1)];
    out[j] = std::move(v);
  }
  return out;
}

std::pair<LevelMeasure, Integer> clear_denominators(const LevelMeasure& mu) {
  Integer l = 1;
  for (const auto& v : mu.values()) {
    const Integer d = v.denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return {mu * Rational(l), l};
}

}  // namespace lmzv
