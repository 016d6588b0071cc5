#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lmzv/rational.hpp"
#include "lmzv/residue_grid.hpp"

namespace lmzv {

/// A letter of the alphabet {X} u {Y_i : i in Z/p^n}. Code 0 is X, code
/// i+1 is Y_i.
struct Letter {
  std::uint32_t code = 0;

  bool is_x() const { return code == 0; }
  bool is_y() const { return code != 0; }
  /// Precondition: is_y().
  std::uint64_t y_index() const { return code - 1; }

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

class Alphabet {
 public:
  /// Throws DomainError for non-prime p.
  Alphabet(std::uint64_t p, std::uint64_t level);

  std::uint64_t prime() const { return p_; }
  std::uint64_t level() const { return n_; }
  /// p^n, the number of Y letters.
  std::uint64_t modulus() const { return modulus_; }
  /// p^n + 1.
  std::size_t size() const { return static_cast<std::size_t>(modulus_ + 1); }

  Letter x() const { return Letter{0}; }
  /// Y_i with i reduced mod p^n (negative i allowed).
  Letter y(std::int64_t i) const;
  Letter letter(std::size_t code) const;

  std::string name(Letter l) const;
  /// "X" or "Y<decimal>"; the index must already be in [0, p^n).
  Letter parse_letter(std::string_view text) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.p_ == b.p_ && a.n_ == b.n_;
  }

 private:
  std::uint64_t p_;
  std::uint64_t n_;
  std::uint64_t modulus_;
};

/// A word in the letters; the empty word is the unit.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t degree() const { return letters_.size(); }
  std::size_t y_degree() const;
  bool is_y_pure() const { return y_degree() == degree(); }

  /// Dot-separated letter names, e.g. "X.Y0.Y3"; "" for the empty word.
  std::string to_string(const Alphabet& alphabet) const;
  static Monomial parse(std::string_view text, const Alphabet& alphabet);

  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Letter> letters_;
};

struct Term {
  Monomial word;
  Rational coeff;
};

/// Non-commutative power series over an Alphabet, truncated above total
/// degree D. Zero coefficients are never stored.
///
/// Words are packed as base-(p^n+1) integers, one map per degree, which
/// requires (p^n+1)^D < 2^64.
class NCSeries {
 public:
  /// The zero series.
  NCSeries(Alphabet alphabet, std::size_t degree);

  static NCSeries one(const Alphabet& alphabet, std::size_t degree);
  static NCSeries letter(const Alphabet& alphabet, std::size_t degree, Letter l);
  static NCSeries monomial(const Alphabet& alphabet, std::size_t degree, const Monomial& w,
                           const Rational& coeff = Rational(1));

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t degree() const { return degree_; }

  /// Throws DomainError when deg w exceeds the truncation degree.
  Rational coeff(const Monomial& w) const;
  Rational constant_term() const;

  /// Adds `c` to the coefficient of `w`; terms above the truncation are
  /// dropped silently, letters outside the alphabet throw.
  void add_term(const Monomial& w, const Rational& c);

  bool is_zero() const;
  std::size_t term_count() const;
  /// Terms ordered by degree, then lexicographically by letter code.
  std::vector<Term> terms() const;

  /// The same terms under a different truncation degree (terms above the new
  /// degree are dropped).
  NCSeries with_degree(std::size_t degree) const;

  NCSeries& operator+=(const NCSeries& o);
  NCSeries& operator-=(const NCSeries& o);
  NCSeries& operator*=(const Rational& c);
  friend NCSeries operator+(NCSeries a, const NCSeries& b) { return a += b; }
  friend NCSeries operator-(NCSeries a, const NCSeries& b) { return a -= b; }
  friend NCSeries operator*(NCSeries a, const Rational& c) { return a *= c; }
  friend NCSeries operator*(const Rational& c, NCSeries a) { return a *= c; }
  NCSeries operator-() const;

  /// Concatenation product truncated at degree D. Throws DomainError on an
  /// alphabet or degree mismatch.
  friend NCSeries operator*(const NCSeries& a, const NCSeries& b);

  friend bool operator==(const NCSeries& a, const NCSeries& b);

  // Packed-word access for the algorithms in this module.
  using Layer = std::map<std::uint64_t, Rational>;
  const Layer& layer(std::size_t d) const { return layers_[d]; }
  std::uint64_t word_code(const Monomial& w) const;
  Monomial decode(std::size_t d, std::uint64_t code) const;
  std::uint64_t base_power(std::size_t d) const { return powers_[d]; }
  void add_packed(std::size_t d, std::uint64_t code, const Rational& c);

 private:
  void require_compatible(const NCSeries& o) const;

  Alphabet alphabet_;
  std::size_t degree_;
  std::vector<std::uint64_t> powers_;
  std::vector<Layer> layers_;
};

/// exp(s) truncated at D. Throws DomainError unless s has zero constant term.
NCSeries exp(const NCSeries& s);
/// log(g) truncated at D. Throws DomainError unless g has constant term 1.
NCSeries log(const NCSeries& g);
/// Multiplicative inverse. Throws DomainError when the constant term is 0.
NCSeries inverse(const NCSeries& g);

/// Drops every monomial of degree > r (the quotient by I^(r+1)).
NCSeries depth_truncate(const NCSeries& s, std::size_t r);
/// Keeps only Y-pure monomials (deg_Y = deg) of degree <= r.
NCSeries y_pure_part(const NCSeries& s, std::size_t r);

/// Images of letters under an algebra endomorphism; applying it extends the
/// images multiplicatively and linearly.
class Substitution {
 public:
  Substitution(Alphabet alphabet, std::size_t degree);

  static Substitution identity(const Alphabet& alphabet, std::size_t degree);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t degree() const { return degree_; }

  void set(Letter l, NCSeries image);
  void clear(Letter l);
  /// nullptr when the letter has no image.
  const NCSeries* image(Letter l) const;

  /// Throws DomainError if a letter occurring in `s` has no image.
  NCSeries apply(const NCSeries& s) const;

  /// outer(inner(-)): letter images are inner's images pushed through outer.
  friend Substitution compose(const Substitution& outer, const Substitution& inner);

 private:
  Alphabet alphabet_;
  std::size_t degree_;
  std::vector<std::optional<NCSeries>> images_;
};

NCSeries substitute(const NCSeries& s, const Substitution& images);

/// Coefficients a_{i_1..i_r} of the Y-pure depth-r words Y_{i_1}...Y_{i_r}.
class LambdaTable {
 public:
  explicit LambdaTable(ResidueGrid grid);
  LambdaTable(ResidueGrid grid, std::vector<Rational> values);

  const ResidueGrid& grid() const { return grid_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& operator[](std::size_t index) const { return values_[index]; }
  Rational& operator[](std::size_t index) { return values_[index]; }
  const Rational& at(const Cell& cell) const { return values_[grid_.index(cell)]; }

  bool is_zero() const;

  friend bool operator==(const LambdaTable&, const LambdaTable&) = default;

 private:
  ResidueGrid grid_;
  std::vector<Rational> values_;
};

/// The alphabet matching a table's (p, n).
Alphabet alphabet_of(const ResidueGrid& grid);

/// The word Y_{c_1}...Y_{c_r}.
Monomial y_word(const Alphabet& alphabet, const Cell& cell);

/// 1 + sum a_i Y_{i_1}...Y_{i_r}, truncated at `degree` (default r).
/// Throws DomainError when degree < r.
NCSeries from_lambda_table(const LambdaTable& t, std::optional<std::size_t> degree = std::nullopt);
/// Reads the depth-r Y-pure coefficients. Throws DomainError when r > D or r == 0.
LambdaTable to_lambda_table(const NCSeries& s, std::size_t r);

}  // namespace lmzv
