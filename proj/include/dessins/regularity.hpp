#pragma once

#include <cstdint>
#include <vector>

#include "dessins/dessin.hpp"
#include "dessins/group.hpp"

namespace dessins {

// Automorphisms of a connected dessin, as dart permutations: the centralizer
// of the cartographic group in the symmetric group on darts.
//
// Automorphisms act on the left; their product A*B is the map x -> A(B(x)),
// which is compose(B, A) in the permutation convention of this library.
PermGroup automorphism_group(const Dessin& d);

bool is_regular(const Dessin& d);

// The unique automorphism taking base_dart to base_dart^g (d regular).
Perm iota(const Dessin& d, std::uint32_t base_dart, const Perm& g);

// (iota(sigma), iota(alpha), iota(phi)); the product sigma_t*alpha_t*phi_t
// is the identity under the left-action composition above.
struct DistinguishedTriple {
  std::uint32_t base_dart = 0;
  Perm sigma_t, alpha_t, phi_t;
};
DistinguishedTriple distinguished_triple(const Dessin& d, std::uint32_t base_dart);

// A finite group together with the dessin of its right-translation action on
// itself; dart i is element i of the group.
struct RegularDessin {
  ConcreteGroup group;
  Dessin dessin;
};
RegularDessin regular_dessin_from_group(ConcreteGroup g);

// The minimal regular dessin covering d: the cartographic group acting on
// itself, with the dart surjection g -> base^g.
struct RegularClosure {
  RegularDessin regular;
  std::vector<std::uint32_t> covering;  // element index -> dart of d
};
RegularClosure regular_closure(const Dessin& d,
                               std::uint64_t cap = kDefaultElementCap);

// The dessin of the right cosets H\G, with sigma and alpha acting by right
// translation.  Subgroup given by element indices into r.group.
Dessin quotient(const RegularDessin& r,
                const std::vector<std::uint32_t>& subgroup_gens);

// Element indices of the stabilizer of a dart under the right-translation
// action through the covering of a regular closure.
std::vector<std::uint32_t> dart_stabilizer(const RegularClosure& rc,
                                           std::uint32_t dart);

}  // namespace dessins
