#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <atomic>
#include <vector>

#include "dessins/belyi.hpp"
#include "dessins/enumeration.hpp"
#include "dessins/gt.hpp"
#include "doctest.h"

using namespace dessins;

namespace {
ExecPolicy serial() { return {false, 1}; }
ExecPolicy parallel2() { return {true, 2}; }
ExecPolicy parallel3() { return {true, 3}; }
}  // namespace

TEST_CASE("run_chunks covers every index exactly once") {
  for (std::size_t n : {0ull, 1ull, 7ull, 255ull, 256ull, 1000ull}) {
    std::vector<std::atomic<int>> hits(n);
    run_chunks(n, parallel2(), [&](std::size_t, std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) hits[i].fetch_add(1);
    });
    for (std::size_t i = 0; i < n; ++i) REQUIRE(hits[i].load() == 1);
  }
}

TEST_CASE("enumeration kernel: serial reference equals OpenMP") {
  for (std::uint32_t n = 1; n <= 6; ++n) {
    auto a = enumerate_scan(n, serial());
    auto b = enumerate_scan(n, parallel2());
    auto c = enumerate_scan(n, parallel3());
    REQUIRE(a == b);
    REQUIRE(a == c);
  }
}

TEST_CASE("generating-pair kernel: serial reference equals OpenMP") {
  ConcreteGroup h3 = build_hn(3);
  auto a = generating_pairs(h3, serial());
  auto b = generating_pairs(h3, parallel2());
  REQUIRE(a == b);
  ConcreteGroup h4 = build_hn(4);
  REQUIRE(generating_pairs(h4, serial()) == generating_pairs(h4, parallel2()));
}

TEST_CASE("multistart kernel: serial reference equals OpenMP") {
  Passport p;
  p.black = {1, 1};
  p.white = {2};
  p.faces = {2};
  p.genus = 0;
  auto sys = setup_system(p);
  SolveOptions sa;
  sa.starts = 500;
  sa.exec = serial();
  SolveOptions sb = sa;
  sb.exec = parallel2();
  auto ca = solve_system(sys, sa);
  auto cb = solve_system(sys, sb);
  REQUIRE(ca.size() == cb.size());
  for (std::size_t i = 0; i < ca.size(); ++i) {
    REQUIRE(ca[i].solution.size() == cb[i].solution.size());
    for (std::size_t j = 0; j < ca[i].solution.size(); ++j)
      REQUIRE(std::abs(ca[i].solution[j] - cb[i].solution[j]) < 1e-12);
  }
}
