#include "lmzv/synth.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "lmzv/arith.hpp"
#include "lmzv/error.hpp"

namespace lmzv {

namespace {

// Uniform in [-magnitude, magnitude]. The modulo draw keeps the stream
// identical across standard libraries, unlike uniform_int_distribution.
Integer draw(std::mt19937_64& rng, std::int64_t magnitude) {
  if (magnitude <= 0) return 0;
  const auto span = static_cast<std::uint64_t>(2 * magnitude + 1);
  return Integer(static_cast<long>(rng() % span)) - Integer(static_cast<long>(magnitude));
}

void make_primitive(std::vector<Integer>& v, std::size_t sign_column) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) return;
  if (v[sign_column] < 0) g = -g;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

std::vector<std::vector<Integer>> fraction_free_nullspace(const IntegerMatrix& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  IntegerMatrix m = a;
  std::vector<std::size_t> pivot_cols;
  Integer prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m.at(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
    }
    const Integer& p = m.at(rank, c);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer t = p * m.at(i, j) - m.at(i, c) * m.at(rank, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m.at(i, c) = 0;
    }
    prev = m.at(rank, c);
    pivot_cols.push_back(c);
    ++rank;
  }

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<Integer>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    // Back-substitute with x_f = 1 and the other free variables 0.
    std::vector<Rational> x(cols, Rational(0));
    x[f] = Rational(1);
    for (std::size_t k = rank; k-- > 0;) {
      const std::size_t pc = pivot_cols[k];
      Rational s(0);
      for (std::size_t j = pc + 1; j < cols; ++j) {
        if (m.at(k, j) != 0 && !x[j].is_zero()) s.add_product(Rational(m.at(k, j)), x[j]);
      }
      x[pc] = -s / Rational(m.at(k, pc));
    }
    Integer l = 1;
    for (const auto& v : x) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.denominator().get_mpz_t());
    }
    std::vector<Integer> out(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      out[j] = x[j].numerator() * (l / x[j].denominator());
    }
    make_primitive(out, f);
    basis.push_back(std::move(out));
  }
  return basis;
}

IntegerMatrix four_term_matrix(const ResidueGrid& grid) {
  IntegerMatrix m(grid.size(), grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    m.at(j, j) += 1;
    m.at(j, grid.affine_image(j, -1, 0)) -= 1;
    m.at(j, grid.affine_image(j, -1, 1)) += 1;
    m.at(j, grid.affine_image(j, 1, -1)) -= 1;
  }
  return m;
}

std::vector<std::vector<std::size_t>> four_term_orbits(const ResidueGrid& grid) {
  const std::size_t size = grid.size();
  std::vector<std::size_t> parent(size);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  for (std::size_t i = 0; i < size; ++i) {
    unite(i, grid.affine_image(i, -1, 0));
    unite(i, grid.affine_image(i, 1, 1));
  }
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<std::size_t> slot(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t root = find(i);
    if (slot[root] == size) {
      slot[root] = orbits.size();
      orbits.emplace_back();
    }
    orbits[slot[root]].push_back(i);
  }
  return orbits;
}

KernelBasis four_term_kernel(std::uint64_t p, std::uint64_t n, std::uint64_t r, std::uint64_t cap) {
  require_prime(p);
  if (r == 0) throw DomainError("kernel depth must be at least 1");
  Integer total;
  mpz_ui_pow_ui(total.get_mpz_t(), p, n * r);
  if (total > Integer(static_cast<unsigned long>(cap))) {
    throw CapExceeded("p^(n r) = " + total.get_str() + " exceeds the size cap " + std::to_string(cap));
  }
  const ResidueGrid grid(p, n, r);
  KernelBasis out{grid, {}};
  for (const auto& orbit : four_term_orbits(grid)) {
    std::vector<std::size_t> local(grid.size(), orbit.size());
    for (std::size_t k = 0; k < orbit.size(); ++k) local[orbit[k]] = k;
    IntegerMatrix block(orbit.size(), orbit.size());
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      const std::size_t j = orbit[k];
      block.at(k, local[j]) += 1;
      block.at(k, local[grid.affine_image(j, -1, 0)]) -= 1;
      block.at(k, local[grid.affine_image(j, -1, 1)]) += 1;
      block.at(k, local[grid.affine_image(j, 1, -1)]) -= 1;
    }
    for (const auto& v : fraction_free_nullspace(block)) {
      LevelMeasure mu(grid);
      for (std::size_t k = 0; k < orbit.size(); ++k) mu[orbit[k]] = Rational(v[k]);
      out.basis.push_back(std::move(mu));
    }
  }
  return out;
}

LevelMeasure random_kernel_measure(const KernelBasis& kernel, std::uint64_t seed, std::int64_t magnitude) {
  std::mt19937_64 rng(seed);
  LevelMeasure out(kernel.grid);
  for (const auto& v : kernel.basis) {
    const Integer c = draw(rng, magnitude);
    if (c != 0) out += v * Rational(c);
  }
  return out;
}

LevelMeasure random_kernel_measure(std::uint64_t p, std::uint64_t n, std::uint64_t r, std::uint64_t seed,
                                   std::int64_t magnitude) {
  return random_kernel_measure(four_term_kernel(p, n, r), seed, magnitude);
}

LambdaTable random_lambda_table(const ResidueGrid& grid, std::uint64_t seed, std::int64_t magnitude) {
  std::mt19937_64 rng(seed);
  LambdaTable t(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) t[i] = Rational(draw(rng, magnitude));
  return t;
}

LevelMeasure lift(const LevelMeasure& mu) {
  const ResidueGrid fine = mu.grid().finer();
  Integer children;
  mpz_ui_pow_ui(children.get_mpz_t(), fine.prime(), fine.depth());
  const Rational share = Rational(1) / Rational(children);
  LevelMeasure out(fine);
  for (std::size_t i = 0; i < fine.size(); ++i) out[i] = mu[fine.reduce(i)] * share;
  return out;
}

}  // namespace lmzv
