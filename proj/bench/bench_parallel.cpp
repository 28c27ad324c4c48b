// Times the OpenMP kernels against their serial reference implementations.

#include <chrono>
#include <iomanip>
#include <iostream>

#include "dessins/belyi.hpp"
#include "dessins/enumeration.hpp"
#include "dessins/gt.hpp"

using namespace dessins;
using Clock = std::chrono::steady_clock;

namespace {

template <class Fn>
double time_it(Fn&& fn) {
  auto t0 = Clock::now();
  fn();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void row(const std::string& name, double serial, double parallel) {
  std::cout << std::left << std::setw(34) << name << std::right << std::fixed
            << std::setprecision(3) << std::setw(9) << serial << "s"
            << std::setw(9) << parallel << "s   x" << std::setprecision(2)
            << (parallel > 0 ? serial / parallel : 0.0) << "\n";
}

}  // namespace

int main() {
  ExecPolicy ser{false, 1};
  ExecPolicy par{true, 0};

  std::cout << std::left << std::setw(34) << "kernel" << std::right
            << std::setw(10) << "serial" << std::setw(10) << "openmp"
            << "   speedup\n";

  {
    double s = time_it([&] { enumerate_scan(7, ser); });
    double p = time_it([&] { enumerate_scan(7, par); });
    row("enumerate_scan n=7", s, p);
  }
  {
    ConcreteGroup h4 = build_hn(4);
    double s = time_it([&] { generating_pairs(h4, ser); });
    double p = time_it([&] { generating_pairs(h4, par); });
    row("generating_pairs H_4", s, p);
  }
  {
    Passport pass;
    pass.black = {4, 2, 1};
    pass.white = {2, 2, 1, 1, 1};
    pass.faces = {7};
    pass.genus = 0;
    auto sys = setup_system(pass);
    SolveOptions so;
    so.starts = 3000;
    so.exec = ser;
    double s = time_it([&] { solve_system(sys, so); });
    so.exec = par;
    double p = time_it([&] { solve_system(sys, so); });
    row("multistart solve (3000 starts)", s, p);
  }
  return 0;
}
