#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "dessins/perm.hpp"
#include "dessins/perm_group.hpp"

namespace dessins {

// Cycle types of sigma, alpha, phi plus the genus: the combinatorial data
// preserved along a Galois orbit.
struct Passport {
  CycleType black;
  CycleType white;
  CycleType faces;
  int genus = 0;
  auto operator<=>(const Passport&) const = default;
};

// Oriented boundaryless dessin: darts 0..n-1 with sigma (rotation around
// black vertices) and alpha (rotation around white vertices).  phi is never
// stored; it is always derived as (sigma*alpha)^-1 so that
// sigma*alpha*phi = 1 holds exactly.
class Dessin {
public:
  Dessin(Perm sigma, Perm alpha);

  std::size_t darts() const { return sigma_.degree(); }
  const Perm& sigma() const { return sigma_; }
  const Perm& alpha() const { return alpha_; }
  Perm phi() const { return compose(sigma_, alpha_).inverse(); }

  auto operator<=>(const Dessin&) const = default;

private:
  Perm sigma_, alpha_;
};

Dessin make_dessin(const Perm& sigma, const Perm& alpha);

PermGroup cartographic_group(const Dessin& d);
bool is_connected(const Dessin& d);
int euler_characteristic(const Dessin& d);
int genus(const Dessin& d);          // connected only
Passport passport(const Dessin& d);  // connected only

// (D, sigma, alpha, phi) -> (D, phi, alpha, alpha^-1 sigma alpha): black
// vertices trade places with face centres.
Dessin dual(const Dessin& d);
// (D, sigma, alpha, phi) -> (D, alpha, sigma, alpha phi alpha^-1): colours
// of the vertices exchanged.
Dessin swap_colors(const Dessin& d);

std::optional<Perm> is_isomorphic(const Dessin& a, const Dessin& b);

// Representative of the isomorphism class of a connected dessin: the least
// relabelled (sigma, alpha) image-table pair over the traversal labelling
// anchored at each candidate base dart.
Dessin canonical_form(const Dessin& d);

// Unoriented model: triangles with three fixed-point-free involutions.
// b pairs the two triangles across each dart; presentations where b has a
// fixed point (a boundary dart) are rejected at construction.
class TrianglePresentation {
public:
  TrianglePresentation(Perm a, Perm b, Perm c);
  std::size_t triangles() const { return a_.degree(); }
  const Perm& a() const { return a_; }
  const Perm& b() const { return b_; }
  const Perm& c() const { return c_; }

private:
  Perm a_, b_, c_;
};

// Doubling: T = darts x {+1,-1} with black triangles (d,+1) at indices
// 0..n-1 and white ones (d,-1) at n..2n-1.
TrianglePresentation to_triangles(const Dessin& d);

// A 2-coloring could not be found; the witness lists a closed walk of odd
// length in the triangle adjacency graph.
struct UnorientedReport {
  std::vector<std::uint32_t> odd_cycle;
};

// Attempts the 2-coloring in which a-, b-, c-neighbours get opposite
// colors.  Per connected component the triangle with the least index is
// black.  On success returns the oriented dessin on the black triangles
// with sigma = ab and alpha = bc.
std::variant<Dessin, UnorientedReport> from_triangles(const TrianglePresentation& t);

}  // namespace dessins
