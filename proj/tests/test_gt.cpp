#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <numeric>
#include <set>

#include "dessins/enumeration.hpp"
#include "dessins/gt.hpp"
#include "doctest.h"

using namespace dessins;

namespace {

struct Level {
  ConcreteGroup h;
  std::vector<GroupAutomorphism> auts;
  OutClasses oc;
  std::vector<GTElement> gts;
};

Level make_level(int n) {
  Level l{build_hn(n), {}, {}, {}};
  l.auts = generating_pairs(l.h);
  l.oc = out_classes(l.h, l.auts);
  l.gts = gt_filter(l.h, l.oc);
  return l;
}

}  // namespace

TEST_CASE("tower groups") {
  CHECK(build_hn(1).order() == 1);
  ConcreteGroup h2 = build_hn(2);
  CHECK(h2.order() == 4);
  CHECK(h2.is_abelian());
  CHECK(h2.exponent() == 2);  // elementary abelian
  CHECK(build_hn(3).order() == 36);
  GtOptions no5;
  no5.allow_level5 = false;
  CHECK_THROWS_AS(build_hn(5, no5), cap_exceeded);
  CHECK_THROWS_AS(build_hn(9), cap_exceeded);
}

TEST_CASE("universal property onto the catalog, levels <= 3") {
  for (int n = 1; n <= 3; ++n) {
    ConcreteGroup h = build_hn(n);
    for (const auto& entry : enumerate_regular(n).entries) {
      const Dessin& d = entry.dessin;
      // evaluate each element's word at (sigma_d, alpha_d); homomorphism and
      // surjectivity make this the canonical projection
      std::vector<Perm> img;
      img.reserve(h.order());
      for (std::uint32_t e = 0; e < h.order(); ++e)
        img.push_back(eval_word_perm(h.word_of(e), d.sigma(), d.alpha()));
      for (std::uint32_t e = 0; e < h.order(); ++e) {
        REQUIRE(compose(img[e], img[h.sigma()]) == img[h.mult(e, h.sigma())]);
        REQUIRE(compose(img[e], img[h.alpha()]) == img[h.mult(e, h.alpha())]);
      }
      std::set<Perm> distinct(img.begin(), img.end());
      REQUIRE(distinct.size() == d.darts());  // image is the whole group
    }
  }
}

TEST_CASE("generating pairs / automorphism counts") {
  CHECK(generating_pairs(build_hn(1)).size() == 1);
  CHECK(generating_pairs(build_hn(2)).size() == 6);
  Level l3 = make_level(3);
  CHECK(l3.auts.size() == 288);
  CHECK(l3.oc.count() == 288);  // abelian: inner classes are trivial

  // every returned pair really is an automorphism: spot products
  ConcreteGroup& h = l3.h;
  for (std::size_t i = 0; i < l3.auts.size(); i += 37) {
    auto map = automorphism_map(h, l3.auts[i]);
    for (std::uint32_t a = 0; a < h.order(); a += 5)
      for (std::uint32_t b = 0; b < h.order(); b += 7)
        REQUIRE(map[h.mult(a, b)] == h.mult(map[a], map[b]));
  }
}

TEST_CASE("theta and delta") {
  ConcreteGroup h = build_hn(3);
  GroupAutomorphism th = theta(h), de = delta(h);

  // theta^2 = 1
  CHECK(compose_aut(h, th, th) == GroupAutomorphism{h.sigma(), h.alpha()});

  // delta^2 = conjugation by alpha
  GroupAutomorphism d2 = compose_aut(h, de, de);
  std::uint32_t a = h.alpha(), ai = h.inverse(a);
  CHECK(d2.sigma_image == h.mult(h.mult(a, h.sigma()), ai));
  CHECK(d2.alpha_image == h.alpha());

  // on the exponent-2 level, delta(sigma) = sigma*alpha
  ConcreteGroup h2 = build_hn(2);
  CHECK(delta(h2).sigma_image == h2.mult(h2.sigma(), h2.alpha()));
  CHECK(delta(h2).alpha_image == h2.alpha());
}

TEST_CASE("GT(2) and GT(3)") {
  Level l2 = make_level(2);
  REQUIRE(l2.gts.size() == 1);
  CHECK(l2.gts[0].k == 1);
  CHECK(l2.gts[0].f == l2.h.identity());
  CHECK(l2.oc.pairs[l2.oc.reps[l2.gts[0].out_class]] ==
        GroupAutomorphism{l2.h.sigma(), l2.h.alpha()});

  Level l3 = make_level(3);
  REQUIRE(l3.gts.size() == 2);
  std::set<std::uint64_t> kchars;
  for (const auto& e : l3.gts) kchars.insert(k_character(e, 3));
  CHECK(kchars == std::set<std::uint64_t>{1, 2});
  for (const auto& e : l3.gts) CHECK(std::gcd<std::uint64_t>(e.k, 36) == 1);
}

TEST_CASE("GT elements are coherent") {
  Level l3 = make_level(3);
  ConcreteGroup& h = l3.h;

  // the representative sends the phi-class to the class of phi^k
  std::uint32_t phi = h.inverse(h.mult(h.sigma(), h.alpha()));
  for (const auto& e : l3.gts) {
    auto rep = l3.oc.pairs[l3.oc.reps[e.out_class]];
    auto map = automorphism_map(h, rep);
    std::uint32_t img = map[phi];
    std::uint32_t pk = h.power(phi, e.k);
    bool conjugate = false;
    for (std::uint32_t c = 0; c < h.order(); ++c)
      if (h.mult(h.mult(h.inverse(c), pk), c) == img) conjugate = true;
    REQUIRE(conjugate);
  }

  // closed under composition and inverse in Out
  std::set<std::uint32_t> klasses;
  for (const auto& e : l3.gts) klasses.insert(e.out_class);
  for (const auto& a : l3.gts)
    for (const auto& b : l3.gts) {
      auto pa = l3.oc.pairs[l3.oc.reps[a.out_class]];
      auto pb = l3.oc.pairs[l3.oc.reps[b.out_class]];
      CHECK(klasses.count(l3.oc.class_of_aut(compose_aut(h, pa, pb))) == 1);
      CHECK(klasses.count(l3.oc.class_of_aut(inverse_aut(h, pa))) == 1);
    }

  // k-character multiplicativity on GT(3)
  for (const auto& a : l3.gts)
    for (const auto& b : l3.gts) {
      auto pa = l3.oc.pairs[l3.oc.reps[a.out_class]];
      auto pb = l3.oc.pairs[l3.oc.reps[b.out_class]];
      auto cls = l3.oc.class_of_aut(compose_aut(h, pa, pb));
      for (const auto& c : l3.gts)
        if (c.out_class == cls)
          CHECK(k_character(c, 3) ==
                (k_character(a, 3) * k_character(b, 3)) % 3);
    }

  // witness k is well-defined mod level where a second witness exists
  for (const auto& e : l3.gts)
    if (e.second_witness)
      CHECK(e.second_witness->first % 3 == e.k % 3);
}

TEST_CASE("level 4 behind the same machinery") {
  Level l4 = make_level(4);
  CHECK(l4.h.order() == 144);
  CHECK(l4.auts.size() == 4608);
  CHECK(l4.gts.size() == 4);
  std::multiset<std::uint64_t> kchars;
  for (const auto& e : l4.gts) kchars.insert(k_character(e, 4));
  CHECK(kchars == std::multiset<std::uint64_t>{1, 1, 3, 3});
}

TEST_CASE("action on dessins: identity, inner, delta, theta") {
  ConcreteGroup h4 = build_hn(4);
  GroupAutomorphism idaut{h4.sigma(), h4.alpha()};

  std::vector<Dessin> small;
  for (std::uint32_t n = 1; n <= 4; ++n)
    for (const auto& d : enumerate_scan(n, {}))
      if (cartographic_group(d).order() <= 4) small.push_back(d);
  REQUIRE(small.size() >= 10);

  for (const auto& d : small) {
    CHECK(is_isomorphic(act_on_dessin(h4, idaut, d), d).has_value());
    CHECK(is_isomorphic(act_on_dessin(h4, delta(h4), d), dual(d)).has_value());
    CHECK(is_isomorphic(act_on_dessin(h4, theta(h4), d), swap_colors(d))
              .has_value());
  }

  // inner automorphisms act trivially up to isomorphism
  std::uint32_t c = h4.mult(h4.sigma(), h4.alpha());
  GroupAutomorphism inner{h4.mult(h4.mult(h4.inverse(c), h4.sigma()), c),
                          h4.mult(h4.mult(h4.inverse(c), h4.alpha()), c)};
  for (const auto& d : small)
    CHECK(is_isomorphic(act_on_dessin(h4, inner, d), d).has_value());

  // the cap on the cartographic order
  Dessin tet(parse_cycles("(1 2 3)(4 5 6)(7 8 9)(10 11 12)", 12),
             parse_cycles("(1 4)(2 10)(3 7)(5 9)(6 11)(8 12)", 12));
  CHECK_THROWS_AS(act_on_dessin(h4, idaut, tet), cap_exceeded);
}

TEST_CASE("tower projections") {
  ConcreteGroup h1 = build_hn(1), h2 = build_hn(2), h3 = build_hn(3);
  auto p21 = tower_projection(h2, h1);
  for (auto v : p21) CHECK(v == 0);

  auto p32 = tower_projection(h3, h2);
  std::size_t kernel = 0;
  for (auto v : p32)
    if (v == 0) ++kernel;
  CHECK(kernel == 9);

  // theta and delta project to theta and delta
  GroupAutomorphism th3 = theta(h3), de3 = delta(h3);
  CHECK(p32[th3.sigma_image] == theta(h2).sigma_image);
  CHECK(p32[th3.alpha_image] == theta(h2).alpha_image);
  CHECK(p32[de3.sigma_image] == delta(h2).sigma_image);
  CHECK(p32[de3.alpha_image] == delta(h2).alpha_image);
}
