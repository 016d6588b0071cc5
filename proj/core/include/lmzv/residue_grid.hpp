#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lmzv {

using Cell = std::vector<std::uint64_t>;

/// The finite index set (Z/p^n Z)^r, enumerated row-major with the first
/// coordinate most significant. Shared by level measures and lambda tables.
class ResidueGrid {
 public:
  /// Throws DomainError for non-prime p, r == 0 or a size that overflows.
  ResidueGrid(std::uint64_t p, std::uint64_t level, std::uint64_t depth);

  std::uint64_t prime() const { return p_; }
  std::uint64_t level() const { return n_; }
  std::uint64_t depth() const { return r_; }
  /// p^n.
  std::uint64_t modulus() const { return modulus_; }
  /// p^(n r).
  std::size_t size() const { return size_; }

  Cell cell(std::size_t index) const;
  std::size_t index(std::span<const std::uint64_t> cell) const;

  /// Index of the cell with every coordinate replaced by (sign*x + shift) mod p^n.
  std::size_t affine_image(std::size_t index, int sign, std::int64_t shift) const;

  /// Reduce every coordinate mod p^(n-1); returns an index into `coarser()`.
  std::size_t reduce(std::size_t index) const;

  /// The grid one level down. Throws DomainError at level 0.
  ResidueGrid coarser() const;
  ResidueGrid finer() const;

  friend bool operator==(const ResidueGrid& a, const ResidueGrid& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.r_ == b.r_;
  }

  /// Reduces an arbitrary integer into [0, modulus).
  std::uint64_t residue(std::int64_t x) const;

 private:
  std::uint64_t p_;
  std::uint64_t n_;
  std::uint64_t r_;
  std::uint64_t modulus_;
  std::size_t size_;
};

}  // namespace lmzv
