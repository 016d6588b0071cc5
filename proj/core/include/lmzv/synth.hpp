#pragma once

#include <cstdint>
#include <vector>

#include "lmzv/measures.hpp"
#include "lmzv/ncseries.hpp"
#include "lmzv/rational.hpp"
#include "lmzv/residue_grid.hpp"

namespace lmzv {

inline constexpr std::uint64_t default_size_cap = 10000;

/// Dense row-major integer matrix.
class IntegerMatrix {
 public:
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Integer> data_;
};

/// Integer basis of {v : A v = 0}. Bareiss elimination gives the echelon
/// form; each free column then yields one vector, scaled to be primitive with
/// a positive entry at its free column. Vectors come in free-column order.
std::vector<std::vector<Integer>> fraction_free_nullspace(const IntegerMatrix& a);

/// Matrix of mu -> four_term(mu) on the grid: row j has +1 at j, -1 at -j,
/// +1 at 1-j and -1 at j-1 (entries accumulate when cells coincide).
IntegerMatrix four_term_matrix(const ResidueGrid& grid);

/// Orbits of cell indices under x -> -x and x -> x + 1 applied to every
/// coordinate at once. Each row of the four-term matrix only touches columns
/// in its own orbit, so the nullspace splits along them. Orbits are sorted
/// and listed by smallest member.
std::vector<std::vector<std::size_t>> four_term_orbits(const ResidueGrid& grid);

struct KernelBasis {
  ResidueGrid grid;
  std::vector<LevelMeasure> basis;

  std::size_t dimension() const { return basis.size(); }
};

/// Integer basis of {mu : four_term(mu) = 0} on (Z/p^n)^r, computed block by
/// block over the orbits. Throws CapExceeded when p^{nr} > cap.
KernelBasis four_term_kernel(std::uint64_t p, std::uint64_t n, std::uint64_t r,
                             std::uint64_t cap = default_size_cap);

/// sum c_k v_k over the basis with c_k uniform in [-magnitude, magnitude].
LevelMeasure random_kernel_measure(const KernelBasis& kernel, std::uint64_t seed, std::int64_t magnitude = 3);
LevelMeasure random_kernel_measure(std::uint64_t p, std::uint64_t n, std::uint64_t r, std::uint64_t seed,
                                   std::int64_t magnitude = 3);

/// Entries uniform in [-magnitude, magnitude]; magnitude 0 gives the zero table.
LambdaTable random_lambda_table(const ResidueGrid& grid, std::uint64_t seed, std::int64_t magnitude = 3);

/// Level n+1 layer spreading each cell's value evenly over its p^r children.
LevelMeasure lift(const LevelMeasure& mu);

}  // namespace lmzv
