#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dessins/enumeration.hpp"
#include "dessins/group.hpp"

namespace dessins {

struct GtOptions {
  int level_cap = 4;        // build levels up to here
  bool allow_level5 = true; // level 5 needs an explicit opt-in at the CLI
  std::uint64_t element_cap = kDefaultElementCap;
  ExecPolicy exec{};
};

// The universal finite two-generator group of a level: the subgroup of the
// direct product of all catalog groups of order <= level generated by the
// diagonal pair.  Every two-generated group whose order-<= level quotients
// separate elements is a quotient of it.
ConcreteGroup build_hn(int level, const GtOptions& opts = {});

// Cost estimate printed before attempting an expensive level.
struct HnCostEstimate {
  std::size_t components = 0;
  double log10_product_order = 0.0;
};
HnCostEstimate estimate_hn_cost(int level, const GtOptions& opts = {});

// An automorphism is determined by the images of (sigma, alpha).
struct GroupAutomorphism {
  std::uint32_t sigma_image = 0;
  std::uint32_t alpha_image = 0;
  auto operator<=>(const GroupAutomorphism&) const = default;
};

// Full element map of the automorphism; throws precondition_error when the
// pair does not define one.
std::vector<std::uint32_t> automorphism_map(const ConcreteGroup& g,
                                            const GroupAutomorphism& a);
std::optional<std::vector<std::uint32_t>> try_automorphism_map(
    const ConcreteGroup& g, std::uint32_t sigma_img, std::uint32_t alpha_img);

// All automorphisms, one per ordered generating pair, sorted.
std::vector<GroupAutomorphism> generating_pairs(const ConcreteGroup& g,
                                                const ExecPolicy& exec = {});

// apply a then b
GroupAutomorphism compose_aut(const ConcreteGroup& g, const GroupAutomorphism& a,
                              const GroupAutomorphism& b);
GroupAutomorphism inverse_aut(const ConcreteGroup& g, const GroupAutomorphism& a);

// Orbits of the automorphisms under composition with inner automorphisms;
// the classes of Out(G).
struct OutClasses {
  std::vector<GroupAutomorphism> pairs;   // sorted automorphism list
  std::vector<std::uint32_t> class_of;    // index into pairs -> class id
  std::vector<std::uint32_t> reps;        // class id -> index of least pair
  std::size_t count() const { return reps.size(); }
  std::uint32_t class_of_aut(const GroupAutomorphism& a) const;
};
OutClasses out_classes(const ConcreteGroup& g,
                       std::vector<GroupAutomorphism> auts);

// sigma <-> alpha.
GroupAutomorphism theta(const ConcreteGroup& g);
// sigma -> alpha phi alpha^-1 = sigma^-1 alpha^-1, alpha -> alpha.
GroupAutomorphism delta(const ConcreteGroup& g);

// An outer class retained by the GT conditions, with its first witness:
// sigma -> sigma^k, alpha -> f^-1 alpha^k f, k prime to |G|, f in the
// derived subgroup; the class commutes with theta and delta in Out(G).
struct GTElement {
  std::uint32_t out_class = 0;
  std::uint64_t k = 1;
  std::uint32_t f = 0;
  std::vector<std::uint8_t> f_word;  // canonical word of f in sigma/alpha
  // second witness when one exists, for well-definedness checks
  std::optional<std::pair<std::uint64_t, std::uint32_t>> second_witness;
};
std::vector<GTElement> gt_filter(const ConcreteGroup& g, const OutClasses& oc,
                                 const ExecPolicy& exec = {});

// k mod n, the finite shadow of the cyclotomic character at level n.
std::uint64_t k_character(const GTElement& e, std::uint64_t level);

// Action of an automorphism of the level group on a dessin whose
// cartographic group has order <= level: pull the dessin back along the
// canonical surjection, twist by the automorphism, and push down again.
Dessin act_on_dessin(const ConcreteGroup& hn, const GroupAutomorphism& aut,
                     const Dessin& d);

// Generator-to-generator surjection between tower levels; returns the full
// element map of big -> small.
std::vector<std::uint32_t> tower_projection(const ConcreteGroup& big,
                                            const ConcreteGroup& small);

}  // namespace dessins
