#include "lmzv/residue_grid.hpp"

#include <string>

#include "lmzv/arith.hpp"
#include "lmzv/error.hpp"

namespace lmzv {

ResidueGrid::ResidueGrid(std::uint64_t p, std::uint64_t level, std::uint64_t depth)
    : p_(p), n_(level), r_(depth) {
  require_prime(p);
  if (depth == 0) throw DomainError("residue grid needs depth >= 1");
  modulus_ = checked_pow(p, level);
  size_ = checked_pow(modulus_, depth);
}

Cell ResidueGrid::cell(std::size_t index) const {
  Cell out(r_);
  for (std::uint64_t k = r_; k-- > 0;) {
    out[k] = index % modulus_;
    index /= modulus_;
  }
  return out;
}

std::size_t ResidueGrid::index(std::span<const std::uint64_t> cell) const {
  if (cell.size() != r_) {
    throw DomainError("cell has " + std::to_string(cell.size()) + " coordinates, grid depth is " +
                      std::to_string(r_));
  }
  std::size_t out = 0;
  for (auto c : cell) out = out * modulus_ + (c % modulus_);
  return out;
}

std::uint64_t ResidueGrid::residue(std::int64_t x) const {
  const auto m = static_cast<std::int64_t>(modulus_);
  auto v = x % m;
  if (v < 0) v += m;
  return static_cast<std::uint64_t>(v);
}

std::size_t ResidueGrid::affine_image(std::size_t index, int sign, std::int64_t shift) const {
  std::size_t out = 0;
  std::size_t scale = 1;
  for (std::uint64_t k = 0; k < r_; ++k) {
    const auto x = static_cast<std::int64_t>(index % modulus_);
    index /= modulus_;
    out += residue(sign * x + shift) * scale;
    scale *= modulus_;
  }
  return out;
}

std::size_t ResidueGrid::reduce(std::size_t index) const {
  if (n_ == 0) throw DomainError("cannot reduce a level-0 grid");
  const std::uint64_t coarse = modulus_ / p_;
  std::size_t out = 0;
  std::size_t scale = 1;
  for (std::uint64_t k = 0; k < r_; ++k) {
    out += (index % modulus_ % coarse) * scale;
    index /= modulus_;
    scale *= coarse;
  }
  return out;
}

ResidueGrid ResidueGrid::coarser() const {
  if (n_ == 0) throw DomainError("level-0 grid has no coarser level");
  return ResidueGrid(p_, n_ - 1, r_);
}

ResidueGrid ResidueGrid::finer() const { return ResidueGrid(p_, n_ + 1, r_); }

}  // namespace lmzv
