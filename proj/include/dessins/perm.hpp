#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "dessins/errors.hpp"

namespace dessins {

// Multiset of cycle lengths, sorted descending.  Sums to the degree of the
// permutation it came from.
using CycleType = std::vector<std::uint32_t>;

// A bijection of {0..n-1}, stored as an image table.
//
// Composition is left-to-right: x^(pq) = (x^p)^q, so compose(p, q) applies
// p first.  All groups in this library act on the right through this
// convention.
class Perm {
public:
  Perm() = default;
  explicit Perm(std::size_t n);  // identity
  static Perm from_images(std::vector<std::uint32_t> images);
  // cycles use 0-based points here; the 1-based layer lives in the parser.
  static Perm from_cycles(std::size_t n,
                          const std::vector<std::vector<std::uint32_t>>& cycles);

  std::size_t degree() const { return img_.size(); }
  std::uint32_t operator[](std::uint32_t x) const { return img_[x]; }
  const std::vector<std::uint32_t>& images() const { return img_; }

  bool is_identity() const;
  Perm inverse() const;
  Perm power(long long k) const;

  std::vector<std::vector<std::uint32_t>> cycles(bool include_fixed = false) const;
  CycleType cycle_type() const;
  std::uint32_t order() const;

  // c^-1 * this * c: the same arrows after relabelling every point by c.
  Perm conjugated_by(const Perm& c) const;

  friend Perm compose(const Perm& p, const Perm& q);
  friend bool commutes(const Perm& p, const Perm& q);

  auto operator<=>(const Perm&) const = default;

private:
  std::vector<std::uint32_t> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const;
};

// Cycle notation I/O, 1-based: "(1 2 3)(4 5)"; "()" is the identity; fixed
// points are omitted when printing and allowed when parsing.
Perm parse_cycles(const std::string& text, std::size_t degree);
std::string cycle_string(const Perm& p);

}  // namespace dessins
