#pragma once

// Small random generators for property tests. Every generator takes the
// engine by reference so a test can replay a case from its seed.

#include <cstdint>
#include <random>

#include "lmzv/measures.hpp"
#include "lmzv/ncseries.hpp"
#include "lmzv/rational.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline lmzv::Rational small_rational(Rng& rng) {
  return lmzv::Rational(lmzv::Integer(static_cast<long>(uniform(rng, -5, 5))),
                        lmzv::Integer(static_cast<long>(uniform(rng, 1, 4))));
}

inline lmzv::Rational nonzero_rational(Rng& rng) {
  lmzv::Rational q;
  while (q.is_zero()) q = small_rational(rng);
  return q;
}

inline lmzv::Monomial word(Rng& rng, const lmzv::Alphabet& a, std::size_t degree) {
  std::vector<lmzv::Letter> letters;
  for (std::size_t i = 0; i < degree; ++i) letters.push_back(a.letter(rng() % a.size()));
  return lmzv::Monomial(std::move(letters));
}

/// `terms` random words of degree 1..max_word_degree with zero constant term.
inline lmzv::NCSeries augmentation_series(Rng& rng, const lmzv::Alphabet& a, std::size_t degree, std::size_t terms,
                                          std::size_t max_word_degree) {
  lmzv::NCSeries s(a, degree);
  for (std::size_t t = 0; t < terms; ++t) {
    const auto d = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_word_degree)));
    s.add_term(word(rng, a, d), small_rational(rng));
  }
  return s;
}

/// exp of a random augmentation series: invertible with constant term 1.
inline lmzv::NCSeries group_like(Rng& rng, const lmzv::Alphabet& a, std::size_t degree, std::size_t terms = 3) {
  return lmzv::exp(augmentation_series(rng, a, degree, terms, std::min<std::size_t>(degree, 2)));
}

inline lmzv::LevelMeasure integer_measure(Rng& rng, const lmzv::ResidueGrid& g, std::int64_t magnitude = 4) {
  lmzv::LevelMeasure mu(g);
  for (std::size_t i = 0; i < g.size(); ++i) mu[i] = lmzv::Rational(uniform(rng, -magnitude, magnitude));
  return mu;
}

inline lmzv::LevelMeasure rational_measure(Rng& rng, const lmzv::ResidueGrid& g) {
  lmzv::LevelMeasure mu(g);
  for (std::size_t i = 0; i < g.size(); ++i) mu[i] = small_rational(rng);
  return mu;
}

}  // namespace gen
