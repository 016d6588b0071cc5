#include "lmzv/euler.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

#include "lmzv/error.hpp"

namespace lmzv {

namespace {

int sign_of_power(std::int64_t e) { return e % 2 == 0 ? 1 : -1; }

std::uint64_t sum_of(std::span<const std::uint64_t> v) {
  return std::accumulate(v.begin(), v.end(), std::uint64_t{0});
}

void require_kernel_hypothesis(const LevelMeasure& mu) {
  if (!mu.is_integer_valued()) throw HypothesisError("measure must be integer-valued (clear denominators first)");
  if (!four_term(mu).is_zero()) throw HypothesisError("measure is not in the kernel of the four-term operator");
}

// prod_{k<r} (x_k - x_{k+1})^{n_k}, the part of the integrand shared by all
// four terms of the symmetry.
Integer difference_factor(std::span<const Integer> x, std::span<const std::uint64_t> exponents) {
  Integer out = 1;
  Integer factor;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    if (exponents[k] == 0) continue;
    const Integer diff = x[k] - x[k + 1];
    mpz_pow_ui(factor.get_mpz_t(), diff.get_mpz_t(), static_cast<unsigned long>(exponents[k]));
    out *= factor;
  }
  return out;
}

Integer shifted_last_power(const Integer& x, std::int64_t shift, std::uint64_t e) {
  Integer base = x + Integer(static_cast<long>(shift));
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return out;
}

// Coset integral of g(x) (x_r + shift)^{n_r}.
Rational shifted_coset_integral(const LevelMeasure& mu, const Coset& coset,
                                std::span<const std::uint64_t> exponents, std::int64_t shift) {
  return integrate(mu, coset, [&](std::span<const Integer> x) -> Integer {
    return difference_factor(x, exponents) * shifted_last_power(x.back(), shift, exponents.back());
  });
}

Cell affine_cell(const Cell& c, int sign, std::int64_t shift, std::uint64_t modulus) {
  Cell out(c.size());
  const auto m = static_cast<std::int64_t>(modulus);
  for (std::size_t k = 0; k < c.size(); ++k) {
    auto v = (sign * static_cast<std::int64_t>(c[k] % modulus) + shift) % m;
    if (v < 0) v += m;
    out[k] = static_cast<std::uint64_t>(v);
  }
  return out;
}

}  // namespace

// ---- P_q and its expansion --------------------------------------------------

Polynomial p_poly(std::uint64_t q, Parity m) {
  const std::uint64_t m_bit = m == Parity::even ? 0 : 1;
  const Rational s(sign_of_power(static_cast<std::int64_t>(m_bit + q)));
  const Polynomial xq = Polynomial::monomial(q);
  return xq - s * xq + s * Polynomial::shifted_power(-1, q) - Polynomial::shifted_power(1, q);
}

std::vector<ExpansionTerm> p_poly_expansion(std::uint64_t a, Parity m) {
  if (a == 0) throw DomainError("p_poly_expansion needs a >= 1");
  const std::int64_t m_bit = m == Parity::even ? 0 : 1;
  std::vector<ExpansionTerm> out;
  out.reserve(a);
  for (std::uint64_t i = 1; i <= a; ++i) {
    const std::uint64_t power = a - i;
    const Integer c = binomial(static_cast<std::int64_t>(a), static_cast<std::int64_t>(power)) *
                      (sign_of_power(m_bit - static_cast<std::int64_t>(power)) - 1);
    out.push_back({i, power, c});
  }
  return out;
}

Polynomial to_polynomial(std::span<const ExpansionTerm> terms) {
  Polynomial out;
  for (const auto& t : terms) out += Polynomial::monomial(t.power, Rational(t.coeff));
  return out;
}

// ---- certificates -----------------------------------------------------------

std::uint64_t VanishingCertificate::prefix_sum() const {
  return sum_of(std::span(target).first(target.size() - 1));
}

std::int64_t certificate_slack(std::span<const CertificateTerm> combination, std::uint64_t p) {
  std::int64_t slack = 0;
  for (const auto& t : combination) {
    const Valuation v = padic_valuation(t.coeff, p);
    if (!v.is_infinite()) slack = std::max(slack, -v.value());
  }
  return slack;
}

VanishingCertificate make_certificate(std::span<const std::uint64_t> prefix, std::uint64_t a, std::uint64_t p) {
  require_prime(p);
  const std::uint64_t m = sum_of(prefix);
  if ((m + a) % 2 == 0) {
    throw DomainError("certificate target needs m + a odd (m = " + std::to_string(m) + ", a = " + std::to_string(a) + ")");
  }
  const Parity parity = parity_of(m);

  // combos[t] expresses x^t as a combination of P_q, for t of a's parity.
  std::map<std::uint64_t, std::map<std::uint64_t, Rational>> combos;
  for (std::uint64_t t = a % 2; t <= a; t += 2) {
    const std::uint64_t q = t <= 1 ? 2 : t + 1;
    const Polynomial pq = p_poly(q, parity);
    const Rational lead = pq.coeff(t);
    if (lead.is_zero() || pq.degree() != static_cast<std::int64_t>(t)) {
      throw Error("internal: P_" + std::to_string(q) + " does not lead with x^" + std::to_string(t));
    }
    // x^t = (P_q - sum_{k<t} c_k x^k) / lead
    std::map<std::uint64_t, Rational> combo;
    combo[q] += Rational(1) / lead;
    for (std::uint64_t k = 0; k < t; ++k) {
      const Rational ck = pq.coeff(k);
      if (ck.is_zero()) continue;
      const auto lower = combos.find(k);
      if (lower == combos.end()) throw Error("internal: lower target of the wrong parity");
      for (const auto& [lq, lc] : lower->second) combo[lq] -= ck / lead * lc;
    }
    std::erase_if(combo, [](const auto& kv) { return kv.second.is_zero(); });
    combos[t] = std::move(combo);
  }

  VanishingCertificate cert;
  cert.target.assign(prefix.begin(), prefix.end());
  cert.target.push_back(a);
  cert.p = p;
  for (const auto& [q, c] : combos.at(a)) cert.combination.push_back({q, c});
  cert.slack = certificate_slack(cert.combination, p);
  return cert;
}

Polynomial replay(const VanishingCertificate& cert) {
  const Parity parity = parity_of(cert.prefix_sum());
  Polynomial out;
  for (const auto& t : cert.combination) out += t.coeff * p_poly(t.q, parity);
  return out;
}

bool certificate_is_sound(const VanishingCertificate& cert) {
  if (cert.target.empty()) return false;
  if ((cert.prefix_sum() + cert.final_exponent()) % 2 == 0) return false;
  return replay(cert) == Polynomial::monomial(cert.final_exponent()) &&
         cert.slack == certificate_slack(cert.combination, cert.p);
}

// ---- vanishing and coset checks -----------------------------------------------

CheckVerdict vanishing_check(const LevelMeasure& mu, std::span<const std::uint64_t> exponents) {
  const ResidueGrid& g = mu.grid();
  if (exponents.size() != g.depth()) throw DomainError("need one exponent per coordinate");
  if (sum_of(exponents) % 2 == 0) throw DomainError("vanishing check needs an odd exponent sum");
  require_kernel_hypothesis(mu);

  ExponentWord e;
  e.exponents.push_back(0);
  e.exponents.insert(e.exponents.end(), exponents.begin(), exponents.end());

  CheckVerdict v;
  v.value = moment(mu, e);
  v.valuation = padic_valuation(v.value, g.prime());
  const auto cert = make_certificate(exponents.first(exponents.size() - 1), exponents.back(), g.prime());
  v.threshold = static_cast<std::int64_t>(g.level()) - cert.slack;
  v.pass = v.valuation.at_least(v.threshold);
  return v;
}

namespace {

CheckVerdict coset_verdict(const LevelMeasure& mu, const Coset& coset, std::span<const std::uint64_t> exponents) {
  const ResidueGrid& g = mu.grid();
  const std::uint64_t cm = checked_pow(g.prime(), coset.modulus_level);
  const auto m = static_cast<std::int64_t>(sum_of(exponents));
  auto at = [&](int sign, std::int64_t shift) {
    return Coset{affine_cell(coset.base, sign, shift, cm), coset.modulus_level};
  };

  Rational total = shifted_coset_integral(mu, at(1, 0), exponents, 0);
  total += Rational(sign_of_power(m + 1)) * shifted_coset_integral(mu, at(-1, 0), exponents, 0);
  total += Rational(sign_of_power(m)) * shifted_coset_integral(mu, at(-1, 1), exponents, -1);
  total -= shifted_coset_integral(mu, at(1, -1), exponents, 1);

  CheckVerdict v;
  v.value = total;
  v.valuation = padic_valuation(total, g.prime());
  v.threshold = static_cast<std::int64_t>(g.level());
  v.pass = v.valuation.at_least(v.threshold);
  return v;
}

void require_coset_args(const ResidueGrid& g, std::uint64_t modulus_level, std::span<const std::uint64_t> exponents) {
  if (exponents.size() != g.depth()) throw DomainError("need one exponent per coordinate");
  if (modulus_level > g.level()) throw DomainError("coset modulus exceeds measure level");
}

}  // namespace

CheckVerdict corollary52_check(const LevelMeasure& mu, const Coset& coset, std::span<const std::uint64_t> exponents) {
  require_coset_args(mu.grid(), coset.modulus_level, exponents);
  if (coset.base.size() != mu.grid().depth()) throw DomainError("coset base has the wrong number of coordinates");
  require_kernel_hypothesis(mu);
  return coset_verdict(mu, coset, exponents);
}

std::vector<IndexVerdict> corollary52_sweep(const LevelMeasure& mu, std::uint64_t modulus_level,
                                            std::span<const std::uint64_t> exponents) {
  const ResidueGrid& g = mu.grid();
  require_coset_args(g, modulus_level, exponents);
  require_kernel_hypothesis(mu);
  const ResidueGrid cg(g.prime(), modulus_level, g.depth());
  std::vector<IndexVerdict> out;
  out.reserve(cg.size());
  for (std::size_t i = 0; i < cg.size(); ++i) {
    Cell base = cg.cell(i);
    CheckVerdict v = coset_verdict(mu, Coset{base, modulus_level}, exponents);
    out.push_back({std::move(base), std::move(v)});
  }
  return out;
}

CorollaryTables corollary_lambda_tables(const LevelMeasure& mu, std::span<const std::uint64_t> exponents,
                                        std::uint64_t table_level) {
  const ResidueGrid& g = mu.grid();
  if (exponents.size() != g.depth()) throw DomainError("need one exponent per coordinate");
  if (table_level > g.level()) throw DomainError("table level exceeds measure level");
  const ResidueGrid tg(g.prime(), table_level, g.depth());
  Integer fact = 1;
  for (auto n : exponents) fact *= factorial(n);
  const Rational inv_fact = Rational(1) / Rational(fact);

  CorollaryTables out{LambdaTable(tg), LambdaTable(tg), LambdaTable(tg),
                      std::vector<std::uint64_t>(exponents.begin(), exponents.end()), g.level()};
  for (std::size_t i = 0; i < tg.size(); ++i) {
    const Coset cs{tg.cell(i), table_level};
    out.plain[i] = shifted_coset_integral(mu, cs, exponents, 0) * inv_fact;
    out.lower[i] = shifted_coset_integral(mu, cs, exponents, -1) * inv_fact;
    out.upper[i] = shifted_coset_integral(mu, cs, exponents, 1) * inv_fact;
  }
  return out;
}

Corollary53Report corollary53_check(const CorollaryTables& tables, std::span<const Cell> indices,
                                    std::optional<std::int64_t> threshold) {
  const ResidueGrid& g = tables.plain.grid();
  if (!(tables.lower.grid() == g) || !(tables.upper.grid() == g)) {
    throw DomainError("identity tables live on different grids");
  }
  if (tables.exponents.size() != g.depth()) throw DomainError("exponent count does not match table depth");
  Integer fact = 1;
  for (auto n : tables.exponents) fact *= factorial(n);
  const std::int64_t thr =
      threshold.value_or(static_cast<std::int64_t>(tables.source_level) - padic_valuation(fact, g.prime()).value());
  const auto m = static_cast<std::int64_t>(sum_of(tables.exponents));

  Corollary53Report report;
  for (const Cell& i : indices) {
    if (i.size() != g.depth()) throw DomainError("index tuple has the wrong length");
    const std::uint64_t N = g.modulus();
    Rational v = tables.plain.at(affine_cell(i, 1, 0, N));
    v += Rational(sign_of_power(m + 1)) * tables.plain.at(affine_cell(i, -1, 0, N));
    v += Rational(sign_of_power(m)) * tables.lower.at(affine_cell(i, -1, 1, N));
    v -= tables.upper.at(affine_cell(i, 1, -1, N));
    CheckVerdict verdict;
    verdict.valuation = padic_valuation(v, g.prime());
    verdict.value = std::move(v);
    verdict.threshold = thr;
    verdict.pass = verdict.valuation.at_least(thr);
    report.pass = report.pass && verdict.pass;
    report.verdicts.push_back({i, std::move(verdict)});
  }
  return report;
}

// ---- filtrations ------------------------------------------------------------

const FiltrationVerdict& FiltrationReport::at(std::uint64_t level, std::uint64_t k) const {
  for (const auto& v : verdicts) {
    if (v.level == level && v.k == k) return v;
  }
  throw DomainError("no filtration verdict for level " + std::to_string(level) + ", k = " + std::to_string(k));
}

bool FiltrationReport::in_l(std::uint64_t k) const {
  return std::all_of(verdicts.begin(), verdicts.end(), [&](const FiltrationVerdict& v) { return v.k != k || v.y_pure; });
}

FiltrationReport filtration_check(const std::map<std::uint64_t, NCSeries>& data, std::uint64_t max_k) {
  FiltrationReport report;
  report.max_k = max_k;
  for (const auto& [level, series] : data) {
    if (series.alphabet().level() != level) throw DomainError("series level does not match its key");
    if (max_k > series.degree()) throw DomainError("filtration degree exceeds the series truncation");
    report.levels.push_back(level);

    // Smallest k at which each condition first fails.
    std::uint64_t first_y_pure = max_k + 1;
    std::uint64_t first_depth = max_k + 1;
    std::uint64_t first_lcs = max_k + 1;
    for (const auto& term : series.terms()) {
      const auto deg = term.word.degree();
      if (deg == 0) continue;
      const auto deg_y = term.word.y_degree();
      if (deg == deg_y) first_y_pure = std::min<std::uint64_t>(first_y_pure, deg);
      first_depth = std::min<std::uint64_t>(first_depth, std::max<std::uint64_t>(deg_y, 1));
      first_lcs = std::min<std::uint64_t>(first_lcs, deg);
    }
    for (std::uint64_t k = 0; k <= max_k; ++k) {
      report.verdicts.push_back({level, k, k < first_y_pure, k < first_depth, k < first_lcs});
    }
  }
  return report;
}

FiltrationReport filtration_check(std::span<const LambdaTable> tables, std::uint64_t max_k) {
  std::map<std::uint64_t, std::vector<const LambdaTable*>> by_level;
  std::size_t degree = std::max<std::uint64_t>(max_k, 1);
  for (const auto& t : tables) {
    by_level[t.grid().level()].push_back(&t);
    degree = std::max<std::size_t>(degree, t.grid().depth());
  }
  std::map<std::uint64_t, NCSeries> data;
  for (const auto& [level, group] : by_level) {
    const Alphabet A = alphabet_of(group.front()->grid());
    NCSeries s = NCSeries::one(A, degree);
    for (const LambdaTable* t : group) {
      if (t->grid().prime() != A.prime()) throw DomainError("tables over different primes");
      s += from_lambda_table(*t, degree) - NCSeries::one(A, degree);
    }
    data.emplace(level, std::move(s));
  }
  return filtration_check(data, max_k);
}

NCSeries lambda_series_from_measures(const std::map<std::uint64_t, LevelMeasure>& by_depth, std::size_t degree) {
  if (by_depth.empty()) throw DomainError("no measures supplied");
  const ResidueGrid& first = by_depth.begin()->second.grid();
  const Alphabet A = alphabet_of(first);
  NCSeries out = NCSeries::one(A, degree);
  for (const auto& [r, mu] : by_depth) {
    const ResidueGrid& g = mu.grid();
    if (g.prime() != first.prime() || g.level() != first.level() || g.depth() != r) {
      throw DomainError("measures must share p and n and sit at their key depth");
    }
    if (r > degree) continue;
    ExponentWord e;
    e.exponents.assign(r + 1, 0);
    std::vector<Integer> lift(r);
    // Every way of spreading `left` X letters over the r+1 gaps.
    std::function<void(std::size_t, std::uint64_t)> spread = [&](std::size_t slot, std::uint64_t left) {
      if (slot == r) {
        e.exponents[r] = left;
        const Rational inv_fact = Rational(1) / Rational(e.factorial_product());
        for (std::size_t i = 0; i < g.size(); ++i) {
          if (mu[i].is_zero()) continue;
          const Cell cell = g.cell(i);
          for (std::size_t k = 0; k < r; ++k) lift[k] = Integer(static_cast<unsigned long>(cell[k]));
          const Rational c = Rational(e.integrand(lift)) * mu[i] * inv_fact;
          if (c.is_zero()) continue;
          std::vector<Letter> letters(e.exponents[0], A.x());
          for (std::size_t k = 0; k < r; ++k) {
            letters.push_back(A.y(static_cast<std::int64_t>(cell[k])));
            letters.insert(letters.end(), e.exponents[k + 1], A.x());
          }
          out.add_term(Monomial(std::move(letters)), c);
        }
        return;
      }
      for (std::uint64_t take = 0; take <= left; ++take) {
        e.exponents[slot] = take;
        spread(slot + 1, left - take);
      }
    };
    for (std::size_t d = r; d <= degree; ++d) spread(0, d - r);
  }
  return out;
}

Rational prop31_formula(const Rational& c, std::uint64_t n) {
  if (n == 0) throw DomainError("prop31_formula needs n >= 1");
  const Rational b = bernoulli(2 * n);
  return -b / (Rational(2) * Rational(factorial(2 * n))) * (c.pow(static_cast<std::int64_t>(2 * n)) - Rational(1));
}

}  // namespace lmzv
