#pragma once

#include <complex>
#include <vector>

#include "dessins/qpoly.hpp"

namespace dessins {

using cd = std::complex<double>;

// Univariate polynomial over C, coefficients ascending.
class CPoly {
public:
  CPoly() = default;
  explicit CPoly(std::vector<cd> coeffs) : c_(std::move(coeffs)) { trim(); }
  static CPoly constant(cd v);
  static CPoly x();
  static CPoly from_roots(const std::vector<cd>& roots, cd lead = 1.0);
  static CPoly from_qpoly(const QPoly& q);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<cd>& coeffs() const { return c_; }
  cd at(std::size_t i) const { return i < c_.size() ? c_[i] : cd(0); }
  cd lc() const;

  cd eval(cd z) const;
  CPoly derivative() const;
  void trim(double rel_tol = 0.0);  // strip leading coefficients below tol*maxmag
  void trim_abs(double cut);        // strip leading coefficients below cut

  friend CPoly operator+(const CPoly&, const CPoly&);
  friend CPoly operator-(const CPoly&, const CPoly&);
  friend CPoly operator*(const CPoly&, const CPoly&);
  CPoly scaled(cd v) const;

private:
  std::vector<cd> c_;
};

// All complex roots (Aberth-Ehrlich with deterministic initialisation).
// Multiple roots come out as clusters of nearby simple roots.
std::vector<cd> poly_roots(const CPoly& p, int max_iter = 400);

// Group nearby points; returns (center, multiplicity) sorted by (re, im).
std::vector<std::pair<cd, int>> cluster_points(std::vector<cd> pts, double tol);

}  // namespace dessins
