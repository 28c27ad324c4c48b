#include "dessins/regularity.hpp"

#include <algorithm>

namespace dessins {

PermGroup automorphism_group(const Dessin& d) {
  if (!is_connected(d))
    throw precondition_error("automorphism group requires a connected dessin");
  return centralizer_in_symmetric(cartographic_group(d));
}

bool is_regular(const Dessin& d) {
  if (!is_connected(d))
    throw precondition_error("regularity requires a connected dessin");
  const std::uint64_t n = d.darts();
  bool by_group = cartographic_group(d).order() == n;
  bool by_aut = automorphism_group(d).order() == n;
  if (by_group != by_aut)
    throw internal_error("regularity criteria disagree");
  return by_group;
}

Perm iota(const Dessin& d, std::uint32_t base_dart, const Perm& g) {
  if (base_dart >= d.darts()) throw precondition_error("base dart out of range");
  if (g.degree() != d.darts())
    throw precondition_error("element degree mismatch");
  if (!is_regular(d)) throw precondition_error("iota requires a regular dessin");
  // h(base^u) = (base^g)^u; propagate along sigma/alpha words from the base.
  const std::size_t n = d.darts();
  std::vector<std::uint32_t> h(n, UINT32_MAX);
  std::vector<std::uint32_t> stack = {base_dart};
  h[base_dart] = g[base_dart];
  while (!stack.empty()) {
    std::uint32_t x = stack.back();
    stack.pop_back();
    for (const Perm* p : {&d.sigma(), &d.alpha()}) {
      std::uint32_t y = (*p)[x];
      std::uint32_t ym = (*p)[h[x]];
      if (h[y] == UINT32_MAX) {
        h[y] = ym;
        stack.push_back(y);
      } else if (h[y] != ym) {
        throw internal_error("iota extension conflict on a regular dessin");
      }
    }
  }
  return Perm::from_images(std::move(h));
}

DistinguishedTriple distinguished_triple(const Dessin& d,
                                         std::uint32_t base_dart) {
  DistinguishedTriple t;
  t.base_dart = base_dart;
  t.sigma_t = iota(d, base_dart, d.sigma());
  t.alpha_t = iota(d, base_dart, d.alpha());
  t.phi_t = iota(d, base_dart, d.phi());
  // Left-action product sigma_t*alpha_t*phi_t applies phi_t first.
  if (!compose(t.phi_t, compose(t.alpha_t, t.sigma_t)).is_identity())
    throw internal_error("distinguished triple does not multiply to 1");
  return t;
}

RegularDessin regular_dessin_from_group(ConcreteGroup g) {
  const std::size_t m = g.order();
  std::vector<std::uint32_t> s(m), a(m);
  for (std::uint32_t x = 0; x < m; ++x) {
    s[x] = g.mult(x, g.sigma());
    a[x] = g.mult(x, g.alpha());
  }
  Dessin d(Perm::from_images(std::move(s)), Perm::from_images(std::move(a)));
  return RegularDessin{std::move(g), std::move(d)};
}

RegularClosure regular_closure(const Dessin& d, std::uint64_t cap) {
  if (!is_connected(d))
    throw precondition_error("regular closure requires a connected dessin");
  ConcreteGroup g = ConcreteGroup::from_permutations(d.sigma(), d.alpha(), cap);
  std::vector<std::uint32_t> covering(g.order());
  for (std::uint32_t e = 0; e < g.order(); ++e) covering[e] = g.perm_of(e)[0];
  return RegularClosure{regular_dessin_from_group(std::move(g)),
                        std::move(covering)};
}

Dessin quotient(const RegularDessin& r,
                const std::vector<std::uint32_t>& subgroup_gens) {
  const ConcreteGroup& g = r.group;
  const std::size_t m = g.order();
  for (auto e : subgroup_gens)
    if (e >= m) throw precondition_error("subgroup generator outside the group");

  // Subgroup closure.
  std::vector<bool> in(m, false);
  std::vector<std::uint32_t> H = {0};
  in[0] = true;
  for (std::size_t head = 0; head < H.size(); ++head)
    for (auto s : subgroup_gens) {
      std::uint32_t x = g.mult(H[head], s);
      if (!in[x]) {
        in[x] = true;
        H.push_back(x);
      }
    }

  // Right cosets Hg, labelled in order of least element index.
  std::vector<std::uint32_t> coset_of(m, UINT32_MAX);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t e = 0; e < m; ++e) {
    if (coset_of[e] != UINT32_MAX) continue;
    auto label = static_cast<std::uint32_t>(reps.size());
    reps.push_back(e);
    for (auto h : H) coset_of[g.mult(h, e)] = label;
  }

  std::vector<std::uint32_t> s(reps.size()), a(reps.size());
  for (std::uint32_t c = 0; c < reps.size(); ++c) {
    s[c] = coset_of[g.mult(reps[c], g.sigma())];
    a[c] = coset_of[g.mult(reps[c], g.alpha())];
  }
  return Dessin(Perm::from_images(std::move(s)), Perm::from_images(std::move(a)));
}

std::vector<std::uint32_t> dart_stabilizer(const RegularClosure& rc,
                                           std::uint32_t dart) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t e = 0; e < rc.covering.size(); ++e) {
    const Perm& p = rc.regular.group.perm_of(e);
    if (p[dart] == dart) out.push_back(e);
  }
  return out;
}

}  // namespace dessins
