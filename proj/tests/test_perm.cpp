#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <unordered_set>

#include "dessins/perm.hpp"
#include "dessins/perm_group.hpp"
#include "doctest.h"

using namespace dessins;

namespace {

std::vector<Perm> symmetric_group(std::uint32_t n) {
  std::vector<std::uint32_t> img(n);
  for (std::uint32_t i = 0; i < n; ++i) img[i] = i;
  std::vector<Perm> out;
  do out.push_back(Perm::from_images(img));
  while (std::next_permutation(img.begin(), img.end()));
  return out;
}

Perm random_perm(std::uint32_t n, std::mt19937_64& rng) {
  std::vector<std::uint32_t> img(n);
  for (std::uint32_t i = 0; i < n; ++i) img[i] = i;
  for (std::uint32_t i = n; i > 1; --i) {
    std::uniform_int_distribution<std::uint32_t> d(0, i - 1);
    std::swap(img[i - 1], img[d(rng)]);
  }
  return Perm::from_images(std::move(img));
}

std::size_t brute_closure_size(std::size_t n, const std::vector<Perm>& gens) {
  std::unordered_set<Perm, PermHash> seen;
  std::vector<Perm> queue = {Perm(n)};
  seen.insert(Perm(n));
  while (!queue.empty()) {
    Perm e = queue.back();
    queue.pop_back();
    for (const auto& g : gens) {
      Perm f = compose(e, g);
      if (seen.insert(f).second) queue.push_back(f);
    }
  }
  return seen.size();
}

const char* kTetSigma = "(1 2 3)(4 5 6)(7 8 9)(10 11 12)";
const char* kTetAlpha = "(1 4)(2 10)(3 7)(5 9)(6 11)(8 12)";

}  // namespace

TEST_CASE("compose follows the right-action convention") {
  Perm id3(3);
  Perm p = parse_cycles("(1 2)", 3);
  Perm q = parse_cycles("(1 2 3)", 3);
  CHECK(compose(id3, q) == q);
  CHECK(compose(q, id3) == q);
  // x -> (x^p)^q by hand: 0->2, 1->1, 2->0
  CHECK(compose(p, q) == parse_cycles("(1 3)", 3));
  Perm st = parse_cycles(kTetSigma, 12);
  CHECK(compose(st, st.inverse()).is_identity());
}

TEST_CASE("cycle types") {
  CHECK(Perm(4).cycle_type() == CycleType{1, 1, 1, 1});
  CHECK(parse_cycles(kTetSigma, 12).cycle_type() == CycleType{3, 3, 3, 3});
  CHECK(parse_cycles("(1 2)(3 4 5)", 5).cycle_type() == CycleType{3, 2});
}

TEST_CASE("group algebra laws, exhaustive for small degrees") {
  for (std::uint32_t n : {2u, 3u, 4u}) {
    auto sn = symmetric_group(n);
    for (const auto& p : sn) {
      CHECK(compose(p, p.inverse()).is_identity());
      CHECK(compose(Perm(n), p) == p);
      CHECK(compose(p, Perm(n)) == p);
    }
    for (const auto& p : sn)
      for (const auto& q : sn)
        for (const auto& r : sn)
          REQUIRE(compose(compose(p, q), r) == compose(p, compose(q, r)));
  }
  // degrees 5 and 6 by seeded sampling
  std::mt19937_64 rng(7);
  for (int i = 0; i < 4000; ++i) {
    std::uint32_t n = 5 + (i % 2);
    Perm p = random_perm(n, rng), q = random_perm(n, rng), r = random_perm(n, rng);
    REQUIRE(compose(compose(p, q), r) == compose(p, compose(q, r)));
    REQUIRE(compose(p, p.inverse()).is_identity());
  }
}

TEST_CASE("cycle notation round trips") {
  CHECK(cycle_string(Perm(5)) == "()");
  CHECK(parse_cycles("()", 4).is_identity());
  CHECK(cycle_string(parse_cycles("(2 1)(5 4)", 5)) == "(1 2)(4 5)");
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Perm p = random_perm(1 + i % 9, rng);
    CHECK(parse_cycles(cycle_string(p), p.degree()) == p);
  }
  CHECK_THROWS_AS(parse_cycles("(1 2", 3), precondition_error);
  CHECK_THROWS_AS(parse_cycles("(1 1)", 3), precondition_error);
  CHECK_THROWS_AS(parse_cycles("(0 1)", 3), precondition_error);
}

TEST_CASE("group order matches brute-force closure") {
  CHECK(PermGroup::from_generators(3, {Perm(3)}).order() == 1);
  CHECK(PermGroup::from_generators(
            12, {parse_cycles(kTetSigma, 12), parse_cycles(kTetAlpha, 12)})
            .order() == 12);
  CHECK(PermGroup::from_generators(
            3, {parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)", 3)})
            .order() == 6);

  std::mt19937_64 rng(23);
  std::uint64_t fact[8] = {1, 1, 2, 6, 24, 120, 720, 5040};
  for (int i = 0; i < 120; ++i) {
    std::uint32_t n = 2 + i % 6;  // up to degree 7
    std::vector<Perm> gens = {random_perm(n, rng), random_perm(n, rng)};
    auto g = PermGroup::from_generators(n, gens);
    REQUIRE(g.order() == brute_closure_size(n, gens));
    REQUIRE(fact[n] % g.order() == 0);
    // membership oracle
    Perm inside = compose(gens[0], compose(gens[1], gens[0]));
    CHECK(g.contains(inside));
  }
}

TEST_CASE("element enumeration honors the cap") {
  auto g = PermGroup::from_generators(
      4, {parse_cycles("(1 2)", 4), parse_cycles("(1 2 3 4)", 4)});
  CHECK(g.order() == 24);
  CHECK(g.elements().size() == 24);
  CHECK_THROWS_AS(g.elements(10), cap_exceeded);
}

TEST_CASE("transitivity") {
  CHECK(PermGroup::from_generators(1, {Perm(1)}).is_transitive());
  CHECK(PermGroup::from_generators(
            12, {parse_cycles(kTetSigma, 12), parse_cycles(kTetAlpha, 12)})
            .is_transitive());
  CHECK_FALSE(
      PermGroup::from_generators(3, {parse_cycles("(1 2)", 3), Perm(3)})
          .is_transitive());
}

TEST_CASE("centralizer in the symmetric group") {
  CHECK(centralizer_in_symmetric(PermGroup::from_generators(1, {Perm(1)}))
            .order() == 1);
  // tetrahedron: centralizer order 12
  auto tet = PermGroup::from_generators(
      12, {parse_cycles(kTetSigma, 12), parse_cycles(kTetAlpha, 12)});
  CHECK(centralizer_in_symmetric(tet).order() == 12);
  // regular representation of C2 x C2 is self-centralizing
  auto klein = PermGroup::from_generators(
      4, {parse_cycles("(1 2)(3 4)", 4), parse_cycles("(1 3)(2 4)", 4)});
  CHECK(centralizer_in_symmetric(klein).order() == 4);

  // brute-force oracle on random groups, degree <= 6
  std::mt19937_64 rng(37);
  for (int i = 0; i < 60; ++i) {
    std::uint32_t n = 2 + i % 5;
    std::vector<Perm> gens = {random_perm(n, rng), random_perm(n, rng)};
    auto g = PermGroup::from_generators(n, gens);
    auto c = centralizer_in_symmetric(g);
    std::uint64_t brute = 0;
    for (const auto& p : symmetric_group(n)) {
      bool ok = true;
      for (const auto& s : gens) ok = ok && commutes(p, s);
      if (ok) ++brute;
    }
    REQUIRE(c.order() == brute);
    for (const auto& cg : c.generators())
      for (const auto& s : gens) REQUIRE(commutes(cg, s));
  }
}

TEST_CASE("simultaneous conjugacy with witness") {
  Perm a = parse_cycles("(1 2)", 3), b = parse_cycles("(1 2 3)", 3);
  auto w = simultaneous_conjugacy({a, b}, {a, b});
  REQUIRE(w.has_value());

  CHECK_FALSE(simultaneous_conjugacy({parse_cycles("(1 2)", 2), parse_cycles("(1 2)", 2)},
                                     {parse_cycles("(1 2)", 2), Perm(2)})
                  .has_value());

  Perm st = parse_cycles(kTetSigma, 12), at = parse_cycles(kTetAlpha, 12);
  Perm c = parse_cycles("(2 3 4)", 12);
  auto tw = simultaneous_conjugacy({st, at},
                                   {st.conjugated_by(c), at.conjugated_by(c)});
  REQUIRE(tw.has_value());
  CHECK(st.conjugated_by(*tw) == st.conjugated_by(c));

  // brute-force oracle, degree <= 5
  std::mt19937_64 rng(41);
  for (int i = 0; i < 120; ++i) {
    std::uint32_t n = 2 + i % 4;
    Perm p1 = random_perm(n, rng), p2 = random_perm(n, rng);
    Perm q1 = random_perm(n, rng), q2 = random_perm(n, rng);
    if (i % 3 == 0) {  // force a positive instance
      Perm c2 = random_perm(n, rng);
      q1 = p1.conjugated_by(c2);
      q2 = p2.conjugated_by(c2);
    }
    bool brute = false;
    for (const auto& c3 : symmetric_group(n))
      if (p1.conjugated_by(c3) == q1 && p2.conjugated_by(c3) == q2) {
        brute = true;
        break;
      }
    auto got = simultaneous_conjugacy({p1, p2}, {q1, q2});
    REQUIRE(got.has_value() == brute);
    if (got) {
      REQUIRE(p1.conjugated_by(*got) == q1);
      REQUIRE(p2.conjugated_by(*got) == q2);
    }
  }
}
