#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "lmzv/arith.hpp"
#include "lmzv/measures.hpp"
#include "lmzv/ncseries.hpp"
#include "lmzv/polynomial.hpp"

namespace lmzv {

enum class Parity { even, odd };

inline Parity parity_of(std::uint64_t m) { return m % 2 == 0 ? Parity::even : Parity::odd; }

/// P_q(x) = x^q - (-1)^{m+q} x^q + (-1)^{m+q} (x-1)^q - (x+1)^q, where only
/// the parity of m matters.
Polynomial p_poly(std::uint64_t q, Parity m);

/// One summand C(a, a-i) ((-1)^{m-(a-i)} - 1) x^{a-i} of the binomial
/// expansion of P_a.
struct ExpansionTerm {
  std::uint64_t i = 0;
  std::uint64_t power = 0;
  Integer coeff;
};

/// The a summands i = 1..a, in order. Throws DomainError for a == 0.
std::vector<ExpansionTerm> p_poly_expansion(std::uint64_t a, Parity m);
Polynomial to_polynomial(std::span<const ExpansionTerm> terms);

struct CertificateTerm {
  std::uint64_t q = 0;
  Rational coeff;

  friend bool operator==(const CertificateTerm&, const CertificateTerm&) = default;
};

/// x^a written as sum coeff_q * P_q(x) for the prefix exponents n_1..n_{r-1}
/// with m = sum n_i and m + a odd. Integrating the identity against the
/// difference factors turns moment bounds on the P_q terms into a bound on
/// x^a with p-adic loss `slack`.
struct VanishingCertificate {
  std::vector<std::uint64_t> target;  // n_1, ..., n_{r-1}, a
  std::vector<CertificateTerm> combination;  // ascending q
  std::uint64_t p = 2;
  std::int64_t slack = 0;

  std::uint64_t prefix_sum() const;
  std::uint64_t final_exponent() const { return target.back(); }

  friend bool operator==(const VanishingCertificate&, const VanishingCertificate&) = default;
};

/// Replays the induction on the final exponent: each step eliminates the top
/// coefficient -2(a+1) of P_{a+1} against lower targets of the same parity;
/// targets 0 and 1 use P_2 directly. Throws DomainError unless m + a is odd.
VanishingCertificate make_certificate(std::span<const std::uint64_t> prefix, std::uint64_t a, std::uint64_t p);

/// sum coeff_q * P_q(x).
Polynomial replay(const VanishingCertificate& cert);
/// replay(cert) == x^a and the stored slack matches the coefficients.
bool certificate_is_sound(const VanishingCertificate& cert);

/// max(0, max over terms of -v_p(coeff)).
std::int64_t certificate_slack(std::span<const CertificateTerm> combination, std::uint64_t p);

struct CheckVerdict {
  Rational value;
  Valuation valuation = Valuation::infinite();
  std::int64_t threshold = 0;
  bool pass = false;
};

/// For integer mu with four_term(mu) = 0 and exponents n_1..n_r of odd sum:
/// v_p(moment(mu, (0, n_1..n_r))) against n - slack. Throws HypothesisError
/// when mu is not in the four-term kernel or not integer-valued.
CheckVerdict vanishing_check(const LevelMeasure& mu, std::span<const std::uint64_t> exponents);

/// Signed sum of the four coset integrals
///   + int_{i+C}    g x_r^{n_r}
///   (-1)^{m+1} int_{-i+C}  g x_r^{n_r}
///   (-1)^m     int_{1-i+C} g (x_r-1)^{n_r}
///   -          int_{i-1+C} g (x_r+1)^{n_r}
/// with g = prod (x_k - x_{k+1})^{n_k} and m = n_1 + ... + n_r; passes when
/// its valuation reaches the level of mu. Same hypotheses as vanishing_check.
CheckVerdict corollary52_check(const LevelMeasure& mu, const Coset& coset, std::span<const std::uint64_t> exponents);

struct IndexVerdict {
  Cell index;
  CheckVerdict verdict;
};

/// corollary52_check over every coset at the given modulus level, with the
/// hypotheses checked once. Verdicts come in cell order.
std::vector<IndexVerdict> corollary52_sweep(const LevelMeasure& mu, std::uint64_t modulus_level,
                                            std::span<const std::uint64_t> exponents);

/// The coefficient tables entering the four-term relation between lambda
/// coefficients, indexed by the Y-index tuple of each word at level m:
/// `plain` integrates g x_r^{n_r}, `lower` g (x_r-1)^{n_r}, `upper`
/// g (x_r+1)^{n_r}, each over the cell's coset and divided by prod n_k!.
/// `lower` and `upper` stand for lambda_{w_2}, lambda_{w_3} once the
/// lower-degree coefficients vanish.
struct CorollaryTables {
  LambdaTable plain;
  LambdaTable lower;
  LambdaTable upper;
  std::vector<std::uint64_t> exponents;  // n_1..n_r
  std::uint64_t source_level = 0;        // level of the measure they came from
};

CorollaryTables corollary_lambda_tables(const LevelMeasure& mu, std::span<const std::uint64_t> exponents,
                                        std::uint64_t table_level);

struct Corollary53Report {
  std::vector<IndexVerdict> verdicts;
  bool pass = true;
};

/// lambda_w + (-1)^{m+1} lambda_{w_1} + (-1)^m lambda_{w_2} - lambda_{w_3}
/// for each index tuple, with w_1, w_2, w_3 at indices -i, -i+1, i-1. The
/// default threshold is source_level - v_p(prod n_k!).
Corollary53Report corollary53_check(const CorollaryTables& tables, std::span<const Cell> indices,
                                    std::optional<std::int64_t> threshold = std::nullopt);

struct FiltrationVerdict {
  std::uint64_t level = 0;
  std::uint64_t k = 0;
  /// Y-pure words of degree <= k vanish (the per-level part of L_k).
  bool y_pure = true;
  /// Every word with deg_Y <= k vanishes (L_k^{(n)}).
  bool depth = true;
  /// Every word of degree <= k vanishes (G_k^{(n)}).
  bool lower_central = true;
};

struct FiltrationReport {
  std::vector<std::uint64_t> levels;
  std::uint64_t max_k = 0;
  std::vector<FiltrationVerdict> verdicts;  // level-major, k ascending

  const FiltrationVerdict& at(std::uint64_t level, std::uint64_t k) const;
  /// L_k: the Y-pure verdict holds at every supplied level.
  bool in_l(std::uint64_t k) const;
};

/// Checks coefficient data Lambda_{pi_n} (one series per level, constant term
/// ignored) for k = 0..max_k. Throws DomainError when max_k exceeds a
/// series' truncation degree.
FiltrationReport filtration_check(const std::map<std::uint64_t, NCSeries>& data, std::uint64_t max_k);
/// Same, from Y-pure tables only (all other coefficients zero).
FiltrationReport filtration_check(std::span<const LambdaTable> tables, std::uint64_t max_k);

/// Series at level n whose coefficient on X^{n_0} Y_{i_1} X^{n_1} ... Y_{i_r} X^{n_r}
/// is the cell-i integral of the exponent-word integrand against the
/// depth-r measure, divided by prod n_k!; words of a depth without a measure
/// get zero. All measures must share one level and prime.
NCSeries lambda_series_from_measures(const std::map<std::uint64_t, LevelMeasure>& by_depth, std::size_t degree);

/// -B_{2n} / (2 (2n)!) (c^{2n} - 1). Throws DomainError for n == 0.
Rational prop31_formula(const Rational& c, std::uint64_t n);

}  // namespace lmzv
