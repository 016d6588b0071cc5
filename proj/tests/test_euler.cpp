#include <gtest/gtest.h>

#include "lmzv/error.hpp"
#include "lmzv/euler.hpp"
#include "lmzv/synth.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace lmzv;

namespace {

using Exps = std::vector<std::uint64_t>;
using SeriesByLevel = std::map<std::uint64_t, NCSeries>;

Polynomial x_power(std::size_t k, const Rational& c = Rational(1)) { return Polynomial::monomial(k, c); }

}  // namespace

TEST(PPoly, LowDegreeValues) {
  EXPECT_EQ(p_poly(2, Parity::even), x_power(1, -4));
  EXPECT_EQ(p_poly(2, Parity::odd), Polynomial::constant(-2));
  EXPECT_TRUE(p_poly(0, Parity::even).is_zero());
  EXPECT_TRUE(p_poly(0, Parity::odd).is_zero());
  EXPECT_TRUE(p_poly(1, Parity::even).is_zero());
  EXPECT_EQ(p_poly(3, Parity::odd), x_power(2, -6) + Polynomial::constant(-2));
}

TEST(PPoly, TopCoefficient) {
  for (std::uint64_t q = 1; q <= 12; ++q) {
    for (Parity m : {Parity::even, Parity::odd}) {
      const Polynomial pq = p_poly(q, m);
      EXPECT_LE(pq.degree(), static_cast<std::int64_t>(q) - 1);
      const std::uint64_t m_bit = m == Parity::even ? 0 : 1;
      // x^{q-1} survives exactly when m - (q-1) is odd, with coefficient -2q.
      if ((m_bit + q - 1) % 2 == 1) {
        EXPECT_EQ(pq.coeff(q - 1), Rational(-2 * static_cast<std::int64_t>(q)));
      } else {
        EXPECT_TRUE(pq.coeff(q - 1).is_zero());
      }
    }
  }
}

TEST(PPolyExpansion, Examples) {
  const auto two = p_poly_expansion(2, Parity::even);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].i, 1u);
  EXPECT_EQ(two[0].power, 1u);
  EXPECT_EQ(two[0].coeff, -4);
  EXPECT_EQ(two[1].power, 0u);
  EXPECT_EQ(two[1].coeff, 0);
  EXPECT_EQ(to_polynomial(two), x_power(1, -4));

  const auto one = p_poly_expansion(1, Parity::even);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].coeff, 0);

  EXPECT_EQ(to_polynomial(p_poly_expansion(3, Parity::odd)), x_power(2, -6) + Polynomial::constant(-2));
  EXPECT_THROW(p_poly_expansion(0, Parity::odd), DomainError);
}

TEST(PPolyExpansion, AgreesWithDefinition) {
  for (std::uint64_t a = 1; a <= 12; ++a) {
    EXPECT_EQ(to_polynomial(p_poly_expansion(a, Parity::even)), p_poly(a, Parity::even)) << a;
    EXPECT_EQ(to_polynomial(p_poly_expansion(a, Parity::odd)), p_poly(a, Parity::odd)) << a;
  }
}

TEST(Certificate, Examples) {
  const auto c1 = make_certificate(Exps{}, 1, 2);
  EXPECT_EQ(c1.combination, (std::vector<CertificateTerm>{{2, Rational::parse("-1/4")}}));
  EXPECT_EQ(c1.slack, 2);
  EXPECT_EQ(c1.target, (Exps{1}));
  EXPECT_EQ(make_certificate(Exps{}, 1, 3).slack, 0);

  const auto c0 = make_certificate(Exps{1}, 0, 3);
  EXPECT_EQ(c0.combination, (std::vector<CertificateTerm>{{2, Rational::parse("-1/2")}}));
  EXPECT_EQ(c0.slack, 0);
  EXPECT_EQ(make_certificate(Exps{1}, 0, 2).slack, 1);

  const auto c3 = make_certificate(Exps{2}, 3, 2);
  EXPECT_EQ(c3.combination,
            (std::vector<CertificateTerm>{{2, Rational::parse("1/4")}, {4, Rational::parse("-1/8")}}));
  EXPECT_EQ(c3.slack, 3);
}

TEST(Certificate, ParityViolationRejected) {
  EXPECT_THROW(make_certificate(Exps{}, 0, 2), DomainError);
  EXPECT_THROW(make_certificate(Exps{1, 2}, 3, 3), DomainError);
  EXPECT_THROW(make_certificate(Exps{}, 1, 4), DomainError);
}

TEST(Certificate, SoundForAllSmallTargets) {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (const Exps& prefix : {Exps{}, Exps{1}, Exps{2}, Exps{1, 2}, Exps{3, 0, 1}}) {
      std::uint64_t m = 0;
      for (auto v : prefix) m += v;
      for (std::uint64_t a = 0; a <= 7; ++a) {
        if ((m + a) % 2 == 0) continue;
        const auto cert = make_certificate(prefix, a, p);
        EXPECT_TRUE(certificate_is_sound(cert));
        EXPECT_EQ(replay(cert), x_power(a));
        EXPECT_EQ(cert.prefix_sum(), m);
        EXPECT_EQ(cert.final_exponent(), a);
        for (std::size_t k = 1; k < cert.combination.size(); ++k) {
          EXPECT_LT(cert.combination[k - 1].q, cert.combination[k].q);
        }
        // Only the parity of the prefix enters the combination.
        EXPECT_EQ(cert.combination, make_certificate(Exps{m % 2 == 0 ? 2u : 1u}, a, p).combination);
      }
    }
  }
}

TEST(Certificate, TamperingDetected) {
  auto cert = make_certificate(Exps{}, 5, 3);
  ASSERT_TRUE(certificate_is_sound(cert));
  auto wrong_coeff = cert;
  wrong_coeff.combination.back().coeff += Rational(1);
  EXPECT_FALSE(certificate_is_sound(wrong_coeff));
  auto wrong_slack = cert;
  wrong_slack.slack += 1;
  EXPECT_FALSE(certificate_is_sound(wrong_slack));
  auto wrong_parity = cert;
  wrong_parity.target = {1, 5};
  EXPECT_FALSE(certificate_is_sound(wrong_parity));
}

TEST(Certificate, SlackFromDenominators) {
  const std::vector<CertificateTerm> terms{{2, Rational::parse("3/8")}, {4, Rational::parse("-5/12")}};
  EXPECT_EQ(certificate_slack(terms, 2), 3);
  EXPECT_EQ(certificate_slack(terms, 3), 1);
  EXPECT_EQ(certificate_slack(terms, 5), 0);
  EXPECT_EQ(certificate_slack({}, 2), 0);
}

TEST(Vanishing, Examples) {
  const auto c3 = LevelMeasure::constant(ResidueGrid(3, 1, 1), Rational(1));
  const CheckVerdict v = vanishing_check(c3, Exps{1});
  EXPECT_EQ(v.value, Rational(3));
  EXPECT_EQ(v.valuation, Valuation::finite(1));
  EXPECT_EQ(v.threshold, 1);
  EXPECT_TRUE(v.pass);

  const CheckVerdict z = vanishing_check(LevelMeasure(ResidueGrid(5, 2, 2)), Exps{2, 1});
  EXPECT_TRUE(z.valuation.is_infinite());
  EXPECT_TRUE(z.pass);

  const auto c2 = LevelMeasure::constant(ResidueGrid(2, 2, 1), Rational(1));
  const CheckVerdict w = vanishing_check(c2, Exps{1});
  EXPECT_EQ(w.value, Rational(6));
  EXPECT_EQ(w.valuation, Valuation::finite(1));
  EXPECT_EQ(w.threshold, 0);
  EXPECT_TRUE(w.pass);
}

TEST(Vanishing, HypothesesEnforced) {
  const ResidueGrid g(3, 1, 1);
  EXPECT_THROW(vanishing_check(LevelMeasure::delta(g, Cell{1}), Exps{1}), HypothesisError);
  EXPECT_THROW(vanishing_check(LevelMeasure::constant(g, Rational::parse("1/2")), Exps{1}), HypothesisError);
  EXPECT_THROW(vanishing_check(LevelMeasure::constant(g, Rational(1)), Exps{2}), DomainError);
  EXPECT_THROW(vanishing_check(LevelMeasure::constant(g, Rational(1)), Exps{1, 2}), DomainError);
}

TEST(Vanishing, HoldsOnKernelBases) {
  for (const auto& [p, n, r] : std::vector<std::tuple<int, int, int>>{{3, 2, 1}, {2, 2, 2}, {5, 1, 2}, {3, 1, 2}}) {
    const KernelBasis k = four_term_kernel(p, n, r);
    for (const auto& v : k.basis) {
      for (std::uint64_t a = 0; a <= 7; ++a) {
        for (std::uint64_t b = 0; a + b <= 7; ++b) {
          const Exps e = r == 1 ? Exps{a + b} : Exps{a, b};
          if ((a + b) % 2 == 0 || (r == 1 && a > 0)) continue;
          const CheckVerdict verdict = vanishing_check(v, e);
          EXPECT_TRUE(verdict.pass) << p << " " << n << " " << r;
          EXPECT_EQ(verdict.value, moment(v, ExponentWord{r == 1 ? Exps{0, a + b} : Exps{0, a, b}}));
        }
      }
    }
  }
}

TEST(Vanishing, EvenMomentsNeedNotVanish) {
  // Witness that the odd-sum hypothesis is needed: the constant kernel
  // measure at p = 3 has second moment 0 + 1 + 4 = 5, a unit.
  const auto c3 = LevelMeasure::constant(ResidueGrid(3, 1, 1), Rational(1));
  EXPECT_TRUE(four_term(c3).is_zero());
  EXPECT_EQ(padic_valuation(moment(c3, ExponentWord{{0, 2}}), 3), Valuation::finite(0));
}

TEST(CosetIdentity, Examples) {
  const CheckVerdict z = corollary52_check(LevelMeasure(ResidueGrid(3, 2, 2)), Coset{{1, 4}, 2}, Exps{1, 2});
  EXPECT_TRUE(z.value.is_zero());
  EXPECT_TRUE(z.pass);

  gen::Rng rng(60);
  const ResidueGrid g2(2, 1, 1);
  for (std::uint64_t base = 0; base < 2; ++base) {
    const CheckVerdict v = corollary52_check(gen::integer_measure(rng, g2), Coset{{base}, 1}, Exps{0});
    EXPECT_TRUE(v.value.is_zero());
  }

  const LevelMeasure mu = random_kernel_measure(3, 2, 1, 61);
  const CheckVerdict v = corollary52_check(mu, Coset{{1}, 2}, Exps{2});
  EXPECT_TRUE(v.valuation.at_least(2));
  EXPECT_EQ(v.threshold, 2);
}

TEST(CosetIdentity, MatchesBruteForceSums) {
  for (const auto& [p, n, r] : std::vector<std::tuple<int, int, int>>{{3, 2, 1}, {2, 2, 2}, {3, 1, 2}, {5, 1, 1}}) {
    const ResidueGrid g(p, n, r);
    const LevelMeasure mu = random_kernel_measure(p, n, r, 62);
    const auto N = static_cast<std::int64_t>(g.modulus());
    for (std::uint64_t level : {std::uint64_t{1}, static_cast<std::uint64_t>(n)}) {
      const ResidueGrid cg(p, level, r);
      const auto M = static_cast<std::int64_t>(cg.modulus());
      for (const Exps& e : r == 1 ? std::vector<Exps>{{0}, {1}, {2}, {3}} : std::vector<Exps>{{0, 1}, {1, 1}, {2, 1}}) {
        std::int64_t m = 0;
        for (auto x : e) m += static_cast<std::int64_t>(x);
        const auto sweep = corollary52_sweep(mu, level, e);
        ASSERT_EQ(sweep.size(), cg.size());
        for (std::size_t i = 0; i < cg.size(); ++i) {
          const Cell base = cg.cell(i);
          auto mapped = [&](int sign, std::int64_t shift) {
            Cell c(base.size());
            for (std::size_t k = 0; k < c.size(); ++k) {
              c[k] = static_cast<std::uint64_t>(oracle::mod(sign * static_cast<std::int64_t>(base[k]) + shift, M));
            }
            return c;
          };
          const Rational expected = oracle::coset_sum(mu, base, level, e, 0) +
                                    Rational(m % 2 == 0 ? -1 : 1) * oracle::coset_sum(mu, mapped(-1, 0), level, e, 0) +
                                    Rational(m % 2 == 0 ? 1 : -1) * oracle::coset_sum(mu, mapped(-1, 1), level, e, -1) -
                                    oracle::coset_sum(mu, mapped(1, -1), level, e, 1);
          const CheckVerdict v = corollary52_check(mu, Coset{base, level}, e);
          EXPECT_EQ(v.value, expected);
          EXPECT_TRUE(v.pass);
          EXPECT_EQ(sweep[i].index, base);
          EXPECT_EQ(sweep[i].verdict.value, v.value);
        }
      }
    }
    (void)N;
  }
}

TEST(CosetIdentity, HypothesesEnforced) {
  const ResidueGrid g(3, 1, 1);
  EXPECT_THROW(corollary52_check(LevelMeasure::delta(g, Cell{1}), Coset{{0}, 1}, Exps{1}), HypothesisError);
  EXPECT_THROW(corollary52_check(LevelMeasure(g), Coset{{0}, 2}, Exps{1}), DomainError);
  EXPECT_THROW(corollary52_sweep(LevelMeasure(g), 1, Exps{1, 1}), DomainError);
}

TEST(LambdaIdentity, ZeroTablesPass) {
  const ResidueGrid g(3, 1, 2);
  const CorollaryTables t{LambdaTable(g), LambdaTable(g), LambdaTable(g), Exps{1, 2}, 1};
  std::vector<Cell> all;
  for (std::size_t i = 0; i < g.size(); ++i) all.push_back(g.cell(i));
  const auto report = corollary53_check(t, all);
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.verdicts.size(), g.size());
}

TEST(LambdaIdentity, KernelTablesPassAndMatchCosetSums) {
  for (const auto& [p, n, r] : std::vector<std::tuple<int, int, int>>{{3, 2, 1}, {2, 2, 2}, {5, 1, 2}}) {
    const LevelMeasure mu = random_kernel_measure(p, n, r, 63);
    const Exps e = r == 1 ? Exps{3} : Exps{1, 2};
    Integer fact = 1;
    for (auto x : e) fact *= factorial(x);
    const auto tables = corollary_lambda_tables(mu, e, n);
    std::vector<Cell> all;
    const ResidueGrid& tg = tables.plain.grid();
    for (std::size_t i = 0; i < tg.size(); ++i) all.push_back(tg.cell(i));
    const auto report = corollary53_check(tables, all);
    EXPECT_TRUE(report.pass);
    for (const auto& iv : report.verdicts) {
      EXPECT_EQ(iv.verdict.value * Rational(fact), corollary52_check(mu, Coset{iv.index, static_cast<std::uint64_t>(n)}, e).value);
      EXPECT_EQ(iv.verdict.threshold, n - padic_valuation(fact, p).value());
    }
  }
}

TEST(LambdaIdentity, OneCellPerturbationFailsExactlyOnce) {
  const LevelMeasure mu = random_kernel_measure(3, 2, 1, 64);
  const Exps e{1};
  auto tables = corollary_lambda_tables(mu, e, 2);
  const ResidueGrid& g = tables.plain.grid();
  std::vector<Cell> all;
  for (std::size_t i = 0; i < g.size(); ++i) all.push_back(g.cell(i));
  ASSERT_TRUE(corollary53_check(tables, all).pass);
  tables.upper[4] += Rational(1);
  const auto report = corollary53_check(tables, all);
  EXPECT_FALSE(report.pass);
  std::vector<Cell> failing;
  for (const auto& iv : report.verdicts) {
    if (!iv.verdict.pass) failing.push_back(iv.index);
  }
  // upper is read at i - 1, so the edit at 4 shows up at index 5.
  EXPECT_EQ(failing, (std::vector<Cell>{{5}}));
}

TEST(LambdaIdentity, ExplicitThresholdAndShapeChecks) {
  const ResidueGrid g(3, 1, 1);
  LambdaTable plain(g, {Rational(3), Rational(0), Rational(0)});
  const CorollaryTables t{plain, LambdaTable(g), LambdaTable(g), Exps{1}, 1};
  // Index 0: 3 + 3 (the -i term is the same cell, sign (-1)^{m+1} = +1) = 6.
  const auto strict = corollary53_check(t, std::vector<Cell>{{0}}, 2);
  EXPECT_EQ(strict.verdicts[0].verdict.value, Rational(6));
  EXPECT_FALSE(strict.pass);
  EXPECT_TRUE(corollary53_check(t, std::vector<Cell>{{0}}, 1).pass);
  EXPECT_THROW(corollary53_check(t, std::vector<Cell>{{0, 0}}), DomainError);
  const CorollaryTables bad{plain, LambdaTable(ResidueGrid(3, 2, 1)), LambdaTable(g), Exps{1}, 1};
  EXPECT_THROW(corollary53_check(bad, std::vector<Cell>{{0}}), DomainError);
}

TEST(Filtration, TableExamples) {
  const ResidueGrid g1(3, 1, 1), g2(3, 1, 2);
  const std::vector<LambdaTable> zero{LambdaTable(g1), LambdaTable(g2)};
  const auto z = filtration_check(zero, 2);
  for (std::uint64_t k = 0; k <= 2; ++k) EXPECT_TRUE(z.in_l(k));

  LambdaTable depth1(g1);
  depth1[1] = Rational(2);
  const std::vector<LambdaTable> one{depth1};
  const auto r1 = filtration_check(one, 1);
  EXPECT_TRUE(r1.in_l(0));
  EXPECT_FALSE(r1.in_l(1));

  LambdaTable depth2(g2);
  depth2[5] = Rational(-1);
  const std::vector<LambdaTable> two{LambdaTable(g1), depth2};
  const auto r2 = filtration_check(two, 2);
  EXPECT_TRUE(r2.in_l(1));
  EXPECT_FALSE(r2.in_l(2));
  EXPECT_EQ(r2.levels, (std::vector<std::uint64_t>{1}));
}

TEST(Filtration, DistinguishesTheThreeConditions) {
  const Alphabet a(3, 1);
  const std::size_t D = 4;
  NCSeries s = NCSeries::one(a, D);
  s.add_term(Monomial::parse("X.Y1", a), Rational(1));  // deg 2, deg_Y 1
  const auto r = filtration_check(SeriesByLevel{{1, s}}, 2);
  const auto& k1 = r.at(1, 1);
  EXPECT_TRUE(k1.y_pure);
  EXPECT_TRUE(k1.lower_central);
  EXPECT_FALSE(k1.depth);
  const auto& k2 = r.at(1, 2);
  EXPECT_TRUE(k2.y_pure);
  EXPECT_FALSE(k2.lower_central);
  EXPECT_TRUE(r.at(1, 0).depth);
  EXPECT_THROW(r.at(2, 0), DomainError);
  EXPECT_THROW(filtration_check(SeriesByLevel{{1, s}}, 5), DomainError);
  EXPECT_THROW(filtration_check(SeriesByLevel{{2, s}}, 1), DomainError);
}

TEST(Filtration, InclusionsHoldOnRandomData) {
  gen::Rng rng(65);
  const Alphabet a(2, 1);
  const std::size_t D = 5;
  for (int trial = 0; trial < 40; ++trial) {
    NCSeries s = NCSeries::one(a, D);
    const auto terms = static_cast<std::size_t>(gen::uniform(rng, 0, 2));
    for (std::size_t t = 0; t < terms; ++t) {
      s.add_term(gen::word(rng, a, static_cast<std::size_t>(gen::uniform(rng, 1, 5))), gen::nonzero_rational(rng));
    }
    const auto r = filtration_check(SeriesByLevel{{1, s}}, D);
    for (const auto& v : r.verdicts) {
      EXPECT_TRUE(!v.depth || v.lower_central);
      EXPECT_TRUE(!v.lower_central || v.y_pure);
      if (v.k > 0) {
        const auto& prev = r.at(v.level, v.k - 1);
        EXPECT_TRUE(!v.y_pure || prev.y_pure);
        EXPECT_TRUE(!v.depth || prev.depth);
      }
    }
  }
}

TEST(LambdaSeries, CoefficientsAreCellIntegrals) {
  const ResidueGrid g(5, 1, 1);
  const LevelMeasure d = LevelMeasure::delta(g, Cell{3}, Rational(2));
  const Alphabet a = alphabet_of(g);
  const NCSeries s = lambda_series_from_measures({{1, d}}, 4);
  EXPECT_EQ(s.constant_term(), Rational(1));
  EXPECT_EQ(s.coeff(Monomial::parse("Y3.X.X", a)), Rational(9));            // 2 * 3^2 / 2!
  EXPECT_EQ(s.coeff(Monomial::parse("X.Y3", a)), Rational(-6));             // 2 * (-3)
  EXPECT_EQ(s.coeff(Monomial::parse("X.Y3.X", a)), Rational(-18));          // 2 * (-3) * 3
  EXPECT_EQ(s.coeff(Monomial::parse("Y1", a)), Rational(0));
  EXPECT_EQ(s.coeff(Monomial::parse("Y3.Y3", a)), Rational(0));              // no depth-2 measure

  gen::Rng rng(66);
  const ResidueGrid g2(3, 1, 2);
  const LevelMeasure mu = gen::rational_measure(rng, g2);
  const NCSeries t = lambda_series_from_measures({{2, mu}}, 4);
  const Alphabet b = alphabet_of(g2);
  EXPECT_EQ(t.coeff(Monomial::parse("X.Y1.X.Y2", b)),
            coset_lambda_coefficient(mu, Coset{{1, 2}, 1}, ExponentWord{{1, 1, 0}}));
  EXPECT_EQ(to_lambda_table(t, 2), as_table(mu));
  EXPECT_THROW(lambda_series_from_measures({}, 2), DomainError);
  EXPECT_THROW(lambda_series_from_measures({{1, mu}}, 2), DomainError);
}

TEST(CharacterFormula, Examples) {
  for (std::uint64_t n = 1; n <= 10; ++n) EXPECT_TRUE(prop31_formula(Rational(1), n).is_zero()) << n;
  EXPECT_EQ(prop31_formula(Rational(2), 1), Rational::parse("-1/8"));
  EXPECT_EQ(prop31_formula(Rational(-1), 3), Rational(0));
  EXPECT_EQ(prop31_formula(Rational(3), 2), Rational::parse("1/18"));
  EXPECT_THROW(prop31_formula(Rational(1), 0), DomainError);
}
