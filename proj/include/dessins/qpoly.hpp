#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "dessins/errors.hpp"

namespace dessins {

using Rational = boost::multiprecision::cpp_rational;

std::string rational_string(const Rational& r);
Rational rational_from_string(const std::string& s);

// Univariate polynomial over Q, coefficients ascending; the zero polynomial
// has an empty coefficient vector and degree -1.
class QPoly {
public:
  QPoly() = default;
  QPoly(std::initializer_list<Rational> coeffs);
  static QPoly constant(const Rational& r);
  static QPoly x();

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational at(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational lc() const;

  QPoly derivative() const;
  Rational eval(const Rational& x) const;
  QPoly monic() const;
  void trim();

  friend QPoly operator+(const QPoly&, const QPoly&);
  friend QPoly operator-(const QPoly&, const QPoly&);
  friend QPoly operator*(const QPoly&, const QPoly&);
  bool operator==(const QPoly&) const = default;

  static std::pair<QPoly, QPoly> divmod(const QPoly& num, const QPoly& den);
  static QPoly gcd(QPoly a, QPoly b);  // monic

  static QPoly from_coeffs(std::vector<Rational> c);

private:
  std::vector<Rational> c_;
};

}  // namespace dessins
