#include "dessins/gt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dessins {

ConcreteGroup build_hn(int level, const GtOptions& opts) {
  if (level < 1) throw precondition_error("level must be at least 1");
  int effective_cap = opts.level_cap;
  if (opts.allow_level5) effective_cap = std::max(effective_cap, 5);
  if (level > effective_cap)
    throw cap_exceeded("tower level " + std::to_string(level) +
                       " exceeds cap " + std::to_string(effective_cap));
  EnumerationOptions eopts;
  eopts.exec = opts.exec;
  eopts.degree_cap = std::max<std::uint32_t>(7, level);
  eopts.regular_order_cap = std::max<std::uint32_t>(8, level);
  RegularCatalog cat = enumerate_regular(level, eopts);
  std::vector<std::shared_ptr<const ConcreteGroup>> comps;
  comps.reserve(cat.entries.size());
  for (auto& e : cat.entries)
    comps.push_back(std::make_shared<const ConcreteGroup>(std::move(e.group)));
  ConcreteGroup h = ConcreteGroup::product_subgroup(std::move(comps),
                                                    opts.element_cap);
  h.level = level;
  return h;
}

HnCostEstimate estimate_hn_cost(int level, const GtOptions& opts) {
  EnumerationOptions eopts;
  eopts.exec = opts.exec;
  eopts.degree_cap = std::max<std::uint32_t>(7, level);
  eopts.regular_order_cap = std::max<std::uint32_t>(8, level);
  RegularCatalog cat = enumerate_regular(level, eopts);
  HnCostEstimate est;
  est.components = cat.entries.size();
  for (const auto& e : cat.entries)
    est.log10_product_order += std::log10(double(e.group.order()));
  return est;
}

std::optional<std::vector<std::uint32_t>> try_automorphism_map(
    const ConcreteGroup& g, std::uint32_t sigma_img, std::uint32_t alpha_img) {
  const std::size_t m = g.order();
  const auto& edges = g.bfs_edges();
  std::vector<std::uint32_t> map(m);
  map[0] = 0;
  for (std::uint32_t e = 1; e < m; ++e)
    map[e] = g.mult(map[edges[e].parent],
                    edges[e].letter == 0 ? sigma_img : alpha_img);
  // Homomorphism on every Cayley edge, which extends to all products.
  for (std::uint32_t e = 0; e < m; ++e) {
    if (g.mult(map[e], sigma_img) != map[g.mult(e, g.sigma())]) return std::nullopt;
    if (g.mult(map[e], alpha_img) != map[g.mult(e, g.alpha())]) return std::nullopt;
  }
  // Bijectivity; the image is the subgroup generated by the pair.
  std::vector<bool> hit(m, false);
  for (auto v : map) {
    if (hit[v]) return std::nullopt;
    hit[v] = true;
  }
  return map;
}

std::vector<std::uint32_t> automorphism_map(const ConcreteGroup& g,
                                            const GroupAutomorphism& a) {
  auto m = try_automorphism_map(g, a.sigma_image, a.alpha_image);
  if (!m)
    throw precondition_error("images do not define an automorphism");
  return *std::move(m);
}

std::vector<GroupAutomorphism> generating_pairs(const ConcreteGroup& g,
                                                const ExecPolicy& exec) {
  const std::size_t m = g.order();
  // An automorphism preserves element orders.
  std::vector<std::uint32_t> ord(m);
  for (std::uint32_t e = 0; e < m; ++e) ord[e] = g.element_order(e);
  const std::uint32_t so = ord[g.sigma()], ao = ord[g.alpha()];

  std::vector<std::vector<GroupAutomorphism>> found(kMaxChunks);
  run_chunks(m * m, exec, [&](std::size_t chunk, std::size_t b, std::size_t e) {
    auto& local = found[chunk];
    for (std::size_t idx = b; idx < e; ++idx) {
      auto h1 = static_cast<std::uint32_t>(idx / m);
      auto h2 = static_cast<std::uint32_t>(idx % m);
      if (ord[h1] != so || ord[h2] != ao) continue;
      if (try_automorphism_map(g, h1, h2)) local.push_back({h1, h2});
    }
  });
  std::vector<GroupAutomorphism> out;
  for (auto& v : found)
    out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

GroupAutomorphism compose_aut(const ConcreteGroup& g, const GroupAutomorphism& a,
                              const GroupAutomorphism& b) {
  auto mb = automorphism_map(g, b);
  return {mb[a.sigma_image], mb[a.alpha_image]};
}

GroupAutomorphism inverse_aut(const ConcreteGroup& g,
                              const GroupAutomorphism& a) {
  auto ma = automorphism_map(g, a);
  std::vector<std::uint32_t> inv(ma.size());
  for (std::uint32_t e = 0; e < ma.size(); ++e) inv[ma[e]] = e;
  return {inv[g.sigma()], inv[g.alpha()]};
}

std::uint32_t OutClasses::class_of_aut(const GroupAutomorphism& a) const {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), a);
  if (it == pairs.end() || *it != a)
    throw precondition_error("not an automorphism of this group");
  return class_of[static_cast<std::size_t>(it - pairs.begin())];
}

OutClasses out_classes(const ConcreteGroup& g,
                       std::vector<GroupAutomorphism> auts) {
  std::sort(auts.begin(), auts.end());
  OutClasses oc;
  oc.pairs = std::move(auts);
  oc.class_of.assign(oc.pairs.size(), UINT32_MAX);
  auto index_of = [&](const GroupAutomorphism& a) {
    auto it = std::lower_bound(oc.pairs.begin(), oc.pairs.end(), a);
    if (it == oc.pairs.end() || *it != a)
      throw internal_error("conjugate pair missing from automorphism list");
    return static_cast<std::uint32_t>(it - oc.pairs.begin());
  };
  const std::size_t m = g.order();
  for (std::uint32_t i = 0; i < oc.pairs.size(); ++i) {
    if (oc.class_of[i] != UINT32_MAX) continue;
    auto cls = static_cast<std::uint32_t>(oc.reps.size());
    oc.reps.push_back(i);
    for (std::uint32_t c = 0; c < m; ++c) {
      std::uint32_t ci = g.inverse(c);
      GroupAutomorphism conj{
          g.mult(g.mult(ci, oc.pairs[i].sigma_image), c),
          g.mult(g.mult(ci, oc.pairs[i].alpha_image), c)};
      oc.class_of[index_of(conj)] = cls;
    }
  }
  return oc;
}

GroupAutomorphism theta(const ConcreteGroup& g) {
  return {g.alpha(), g.sigma()};
}

GroupAutomorphism delta(const ConcreteGroup& g) {
  // sigma -> sigma^-1 alpha^-1, alpha -> alpha
  return {g.mult(g.inverse(g.sigma()), g.inverse(g.alpha())), g.alpha()};
}

std::vector<GTElement> gt_filter(const ConcreteGroup& g, const OutClasses& oc,
                                 const ExecPolicy& /*exec*/) {
  const std::uint64_t exp = g.exponent();
  const auto derived = g.derived_subgroup();

  // GT0: collect classes reachable as (sigma^k, f^-1 alpha^k f); k ascending,
  // f in breadth-first order (element index order), first two witnesses kept.
  std::vector<std::optional<GTElement>> cand(oc.count());
  auto lookup = [&](const GroupAutomorphism& a) -> std::optional<std::uint32_t> {
    auto it = std::lower_bound(oc.pairs.begin(), oc.pairs.end(), a);
    if (it == oc.pairs.end() || *it != a) return std::nullopt;
    return oc.class_of[static_cast<std::size_t>(it - oc.pairs.begin())];
  };
  for (std::uint64_t k = 1; k <= exp; ++k) {
    if (std::gcd(k, exp) != 1) continue;  // primes of exp are those of |G|
    std::uint32_t sk = g.power(g.sigma(), k);
    std::uint32_t ak = g.power(g.alpha(), k);
    for (auto f : derived) {
      GroupAutomorphism a{sk, g.mult(g.mult(g.inverse(f), ak), f)};
      auto cls = lookup(a);
      if (!cls) continue;
      if (!cand[*cls]) {
        GTElement e;
        e.out_class = *cls;
        e.k = k;
        e.f = f;
        e.f_word = g.word_of(f);
        cand[*cls] = std::move(e);
      } else if (!cand[*cls]->second_witness &&
                 (cand[*cls]->k != k || cand[*cls]->f != f)) {
        cand[*cls]->second_witness = {{k, f}};
      }
    }
  }

  // GT1/GT2: commutation with theta and delta in the outer group.
  const std::uint32_t tc = oc.class_of_aut(theta(g));
  const std::uint32_t dc = oc.class_of_aut(delta(g));
  auto commutes_out = [&](std::uint32_t c1, std::uint32_t c2) {
    const auto& a = oc.pairs[oc.reps[c1]];
    const auto& b = oc.pairs[oc.reps[c2]];
    return oc.class_of_aut(compose_aut(g, a, b)) ==
           oc.class_of_aut(compose_aut(g, b, a));
  };
  std::vector<GTElement> out;
  for (auto& c : cand) {
    if (!c) continue;
    if (!commutes_out(c->out_class, tc)) continue;
    if (!commutes_out(c->out_class, dc)) continue;
    out.push_back(std::move(*c));
  }
  std::sort(out.begin(), out.end(),
            [](const GTElement& a, const GTElement& b) {
              return a.out_class < b.out_class;
            });
  return out;
}

std::uint64_t k_character(const GTElement& e, std::uint64_t level) {
  return e.k % level;
}

Dessin act_on_dessin(const ConcreteGroup& hn, const GroupAutomorphism& aut,
                     const Dessin& d) {
  if (hn.level <= 0)
    throw precondition_error("act_on_dessin needs a tower level group");
  PermGroup cart = cartographic_group(d);
  if (cart.order() > static_cast<std::uint64_t>(hn.level))
    throw cap_exceeded("cartographic group order exceeds the level");
  if (!is_connected(d))
    throw precondition_error("act_on_dessin requires a connected dessin");

  const std::size_t m = hn.order();
  auto gamma = automorphism_map(hn, aut);

  // Canonical surjection p: level group -> cartographic group, evaluated as
  // dart permutations; the preimage of the dart-0 stabilizer is the subgroup
  // whose gamma-image we take cosets of.
  std::vector<std::uint32_t> gammaK;
  for (std::uint32_t e = 0; e < m; ++e) {
    Perm pe = eval_word_perm(hn.word_of(e), d.sigma(), d.alpha());
    if (pe[0] == 0) gammaK.push_back(gamma[e]);
  }

  std::vector<std::uint32_t> coset_of(m, UINT32_MAX);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t e = 0; e < m; ++e) {
    if (coset_of[e] != UINT32_MAX) continue;
    auto label = static_cast<std::uint32_t>(reps.size());
    reps.push_back(e);
    for (auto h : gammaK) coset_of[hn.mult(h, e)] = label;
  }
  if (reps.size() != d.darts())
    throw internal_error("act_on_dessin coset count mismatch");

  std::vector<std::uint32_t> s(reps.size()), a(reps.size());
  for (std::uint32_t c = 0; c < reps.size(); ++c) {
    s[c] = coset_of[hn.mult(reps[c], hn.sigma())];
    a[c] = coset_of[hn.mult(reps[c], hn.alpha())];
  }
  return Dessin(Perm::from_images(std::move(s)), Perm::from_images(std::move(a)));
}

std::vector<std::uint32_t> tower_projection(const ConcreteGroup& big,
                                            const ConcreteGroup& small) {
  const std::size_t m = big.order();
  const auto& edges = big.bfs_edges();
  std::vector<std::uint32_t> map(m);
  map[0] = 0;
  for (std::uint32_t e = 1; e < m; ++e)
    map[e] = small.mult(map[edges[e].parent],
                        edges[e].letter == 0 ? small.sigma() : small.alpha());
  for (std::uint32_t e = 0; e < m; ++e) {
    if (small.mult(map[e], small.sigma()) != map[big.mult(e, big.sigma())] ||
        small.mult(map[e], small.alpha()) != map[big.mult(e, big.alpha())])
      throw internal_error("tower projection is not a homomorphism");
  }
  std::vector<bool> hit(small.order(), false);
  std::size_t cnt = 0;
  for (auto v : map)
    if (!hit[v]) {
      hit[v] = true;
      ++cnt;
    }
  if (cnt != small.order())
    throw internal_error("tower projection is not surjective");
  return map;
}

}  // namespace dessins
