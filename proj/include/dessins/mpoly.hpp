#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "dessins/qpoly.hpp"

namespace dessins {

// Sparse multivariate polynomial over Q with a fixed variable count.
// Exponents are capped at 255 per variable, far above anything the Belyi
// systems produce.
class MPoly {
public:
  using Expo = std::vector<std::uint8_t>;

  explicit MPoly(std::size_t nvars = 0) : nvars_(nvars) {}
  static MPoly constant(std::size_t nvars, const Rational& r);
  static MPoly var(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Expo, Rational>& terms() const { return terms_; }

  MPoly& add_term(const Expo& e, const Rational& coeff);

  friend MPoly operator+(const MPoly&, const MPoly&);
  friend MPoly operator-(const MPoly&, const MPoly&);
  friend MPoly operator*(const MPoly&, const MPoly&);
  MPoly scaled(const Rational& r) const;
  MPoly derivative(std::size_t var) const;
  MPoly pow(std::uint32_t k) const;
  // Largest k with var^k dividing every term, and the quotient by var^k.
  std::uint32_t var_content(std::size_t var) const;
  MPoly without_var_power(std::size_t var, std::uint32_t k) const;

  std::complex<double> eval(const std::vector<std::complex<double>>& x) const;
  std::string to_string(const std::vector<std::string>& names) const;
  bool operator==(const MPoly&) const = default;

private:
  std::size_t nvars_;
  std::map<Expo, Rational> terms_;
};

// Polynomials in a distinguished variable z whose coefficients are MPoly in
// the system unknowns.  Coefficients ascending in z; trailing zeros trimmed.
using ZMPoly = std::vector<MPoly>;

ZMPoly zmp_constant(const MPoly& m);
ZMPoly zmp_add(const ZMPoly& a, const ZMPoly& b);
ZMPoly zmp_sub(const ZMPoly& a, const ZMPoly& b);
ZMPoly zmp_mul(const ZMPoly& a, const ZMPoly& b);
ZMPoly zmp_scale(const ZMPoly& a, const MPoly& m);
ZMPoly zmp_pow(const ZMPoly& a, std::uint32_t k);
ZMPoly zmp_derivative(const ZMPoly& a);  // d/dz
void zmp_trim(ZMPoly& a);
int zmp_degree(const ZMPoly& a);
// Substitute z by a system variable.
MPoly zmp_eval_at_var(const ZMPoly& a, std::size_t var, std::size_t nvars);

// Resultant in z of two monic-in-z polynomials (Sylvester determinant,
// expansion with column-subset memoisation).
MPoly resultant_z(const ZMPoly& a, const ZMPoly& b, std::size_t nvars);

// Pseudo-remainder of num by den in z: multiplies through by powers of the
// leading coefficient of den, so the zero locus away from lc(den)=0 agrees
// with the true remainder.
ZMPoly zmp_pseudo_remainder(ZMPoly num, const ZMPoly& den);

}  // namespace dessins
