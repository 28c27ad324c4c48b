#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dessins/perm.hpp"

namespace dessins {

// Explicit finite group with a distinguished generating pair (sigma, alpha).
// Elements are indexed 0..order-1 with index 0 the identity; the indexing is
// the breadth-first discovery order from the identity under right
// multiplication by sigma then alpha, so every element carries a canonical
// word in the generators.
//
// Two storage backends: plain permutations (cartographic groups, catalog
// components) and tuples over component groups (subgroups of direct
// products).  A full multiplication table is materialized for small orders.
class ConcreteGroup {
public:
  static constexpr std::size_t kTableLimit = 4096;

  static ConcreteGroup from_permutations(const Perm& sigma, const Perm& alpha,
                                         std::uint64_t cap);
  // Subgroup of comps[0] x comps[1] x ... generated by the diagonal pair of
  // the components' distinguished generators.
  static ConcreteGroup product_subgroup(
      std::vector<std::shared_ptr<const ConcreteGroup>> comps,
      std::uint64_t cap);

  std::size_t order() const { return size_; }
  std::uint32_t identity() const { return 0; }
  std::uint32_t sigma() const { return sigma_; }
  std::uint32_t alpha() const { return alpha_; }

  std::uint32_t mult(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inverse(std::uint32_t a) const;
  std::uint32_t power(std::uint32_t a, std::uint64_t k) const;
  std::uint32_t element_order(std::uint32_t a) const;
  std::uint32_t exponent() const;
  bool is_abelian() const { return abelian_; }

  // Subgroup generated by all commutators, as sorted element indices.
  std::vector<std::uint32_t> derived_subgroup() const;

  struct BfsEdge {
    std::uint32_t parent = UINT32_MAX;
    std::uint8_t letter = 0;  // 0: sigma, 1: alpha
  };
  const std::vector<BfsEdge>& bfs_edges() const { return edges_; }
  // Canonical word of an element, letters 0 (sigma) / 1 (alpha), identity
  // has the empty word.
  std::vector<std::uint8_t> word_of(std::uint32_t e) const;
  // Evaluate a word at substituted generator images inside this group.
  std::uint32_t eval_word(const std::vector<std::uint8_t>& word,
                          std::uint32_t sigma_img, std::uint32_t alpha_img) const;

  // Permutation backend only: the underlying permutation of an element.
  const Perm& perm_of(std::uint32_t e) const;
  bool has_perm_backend() const { return !perms_.empty(); }

  // Construction level when this group was produced as a tower group; 0
  // otherwise.  Used for the act-on-dessin precondition.
  int level = 0;

private:
  void finalize(std::uint64_t cap);
  std::uint32_t raw_mult(std::uint32_t a, std::uint32_t b) const;

  std::size_t size_ = 0;
  std::uint32_t sigma_ = 0, alpha_ = 0;
  bool abelian_ = false;

  std::vector<Perm> perms_;
  std::vector<std::vector<std::uint8_t>> tuples_;
  std::vector<std::shared_ptr<const ConcreteGroup>> comps_;

  std::vector<std::uint32_t> table_;  // size*size when materialized
  std::vector<std::uint32_t> inv_;
  std::vector<BfsEdge> edges_;

  std::uint32_t index_of_perm(const Perm& p) const;
  std::uint32_t index_of_tuple(const std::vector<std::uint8_t>& t) const;
  // Lookup tables from value to index.
  struct Lookup;
  std::shared_ptr<Lookup> lookup_;
};

// Evaluate a generator word as a permutation.
Perm eval_word_perm(const std::vector<std::uint8_t>& word, const Perm& sigma,
                    const Perm& alpha);

// Render a word as a human-readable string in s and a ("" for the identity).
std::string word_string(const std::vector<std::uint8_t>& word);

}  // namespace dessins
