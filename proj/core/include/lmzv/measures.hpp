#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lmzv/ncseries.hpp"
#include "lmzv/rational.hpp"
#include "lmzv/residue_grid.hpp"

namespace lmzv {

/// The level-n layer of a measure on (Z_p)^r: one exact rational per cell
/// of (Z/p^n Z)^r, row-major.
class LevelMeasure {
 public:
  explicit LevelMeasure(ResidueGrid grid);
  LevelMeasure(ResidueGrid grid, std::vector<Rational> values);

  static LevelMeasure constant(const ResidueGrid& grid, const Rational& c);
  static LevelMeasure delta(const ResidueGrid& grid, const Cell& at, const Rational& mass = Rational(1));

  const ResidueGrid& grid() const { return grid_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  Rational& operator[](std::size_t i) { return values_[i]; }
  const Rational& at(const Cell& cell) const { return values_[grid_.index(cell)]; }

  bool is_zero() const;
  bool is_integer_valued() const;

  LevelMeasure& operator+=(const LevelMeasure& o);
  LevelMeasure& operator-=(const LevelMeasure& o);
  LevelMeasure& operator*=(const Rational& c);
  friend LevelMeasure operator+(LevelMeasure a, const LevelMeasure& b) { return a += b; }
  friend LevelMeasure operator-(LevelMeasure a, const LevelMeasure& b) { return a -= b; }
  friend LevelMeasure operator*(LevelMeasure a, const Rational& c) { return a *= c; }

  friend bool operator==(const LevelMeasure&, const LevelMeasure&) = default;

 private:
  ResidueGrid grid_;
  std::vector<Rational> values_;
};

LevelMeasure as_measure(const LambdaTable& t);
LambdaTable as_table(const LevelMeasure& mu);

/// (n_0, n_1, ..., n_r) standing for X^{n_0} Y X^{n_1} ... Y X^{n_r}; the
/// integrand is (-x_1)^{n_0} (x_1-x_2)^{n_1} ... (x_{r-1}-x_r)^{n_{r-1}} x_r^{n_r}.
struct ExponentWord {
  std::vector<std::uint64_t> exponents;

  /// r, i.e. the number of Y letters.
  std::size_t depth() const { return exponents.empty() ? 0 : exponents.size() - 1; }
  /// prod_k n_k!
  Integer factorial_product() const;
  /// The integrand at integer coordinates x_1..x_r.
  Integer integrand(std::span<const Integer> x) const;

  friend bool operator==(const ExponentWord&, const ExponentWord&) = default;
};

/// The cells congruent to `base` modulo p^m (m = 0 is the whole space).
struct Coset {
  Cell base;
  std::uint64_t modulus_level = 0;
};

/// Level n-1 layer: value at j is the sum over the p^r cells above j.
/// Throws DomainError at level 0.
LevelMeasure project(const LevelMeasure& mu);

/// Pushforward along x -> sign*x + shift on every coordinate:
/// value at j is mu(sign*(j - shift)).
LevelMeasure affine_pushforward(const LevelMeasure& mu, int sign, std::int64_t shift);

/// sum over cells (optionally restricted to a coset) of f(lift) * mu(cell),
/// where lift holds the representatives in [0, p^n). Throws DomainError
/// when the coset modulus exceeds the level or its depth is wrong.
Rational integrate(const LevelMeasure& mu, const std::optional<Coset>& coset,
                   const std::function<Integer(std::span<const Integer>)>& f);

/// Riemann sum of the exponent-word integrand against mu, without the
/// factorial prefactor.
Rational moment(const LevelMeasure& mu, const ExponentWord& e);
Rational coset_moment(const LevelMeasure& mu, const Coset& coset, const ExponentWord& e);

/// moment / prod n_k!
Rational lambda_coefficient(const LevelMeasure& mu, const ExponentWord& e);
Rational coset_lambda_coefficient(const LevelMeasure& mu, const Coset& coset, const ExponentWord& e);

/// The moment with each representative moved to canonical + k * p^n, with
/// k read from `lift_multiples` (cell-major, r entries per cell).
Rational moment_with_lifts(const LevelMeasure& mu, const ExponentWord& e,
                           std::span<const std::int64_t> lift_multiples);

/// value at j: mu(j) - mu(-j) + mu(1-j) - mu(j-1), coordinate-wise mod p^n.
LevelMeasure four_term(const LevelMeasure& mu);

/// Multiplies by the lcm of the denominators; returns (integer measure, lcm).
std::pair<LevelMeasure, Integer> clear_denominators(const LevelMeasure& mu);

}  // namespace lmzv
