#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dessins/perm.hpp"

namespace dessins {

inline constexpr std::uint64_t kDefaultElementCap = 10'000'000;

// Permutation group given by generators.  Order and membership come from a
// deterministic stabilizer chain with base points 0, 1, 2, ... in natural
// order; full element listings are produced by closure and are only allowed
// under a cap.
class PermGroup {
public:
  PermGroup() = default;
  static PermGroup from_generators(std::size_t degree, std::vector<Perm> gens);

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }

  std::uint64_t order() const { return order_; }
  bool contains(const Perm& g) const;
  bool is_transitive() const;
  std::vector<std::uint32_t> orbit(std::uint32_t point) const;
  std::vector<std::vector<std::uint32_t>> orbits() const;

  // All elements, sorted by image table.  Throws cap_exceeded if the order
  // is larger than the cap.
  std::vector<Perm> elements(std::uint64_t cap = kDefaultElementCap) const;

private:
  struct Level {
    std::uint32_t base = 0;
    std::vector<Perm> gens;
    std::vector<std::int32_t> slot;  // point -> transversal index, -1 outside orbit
    std::vector<Perm> transversal;   // u with base^u = point
    std::vector<std::uint32_t> orbit;
  };

  void build_chain();
  void add_generator(std::size_t level, Perm g);
  void extend_orbit(std::size_t level);

  std::size_t degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<Level> levels_;
  std::uint64_t order_ = 1;
};

// Everything in S_n commuting with every generator of g.  Works orbit by
// orbit: equivariant self-maps are found by extending the image of an orbit
// representative, and isomorphic orbits contribute swap generators.
PermGroup centralizer_in_symmetric(const PermGroup& g);

// A witness c with c^-1 * from.first * c = to.first and likewise for the
// second components, or nullopt.  Backtracking over anchor images with
// forced equivariant propagation.
std::optional<Perm> simultaneous_conjugacy(const std::pair<Perm, Perm>& from,
                                           const std::pair<Perm, Perm>& to);

}  // namespace dessins
