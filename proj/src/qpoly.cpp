#include "dessins/qpoly.hpp"

namespace dessins {

std::string rational_string(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1)
    return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

Rational rational_from_string(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos)
      return Rational(boost::multiprecision::cpp_int(s));
    boost::multiprecision::cpp_int num(s.substr(0, slash));
    boost::multiprecision::cpp_int den(s.substr(slash + 1));
    if (den == 0) throw precondition_error("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw precondition_error("bad rational literal: " + s);
  }
}

QPoly::QPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

QPoly QPoly::constant(const Rational& r) {
  QPoly p;
  if (r != 0) p.c_ = {r};
  return p;
}

QPoly QPoly::x() {
  QPoly p;
  p.c_ = {Rational(0), Rational(1)};
  return p;
}

QPoly QPoly::from_coeffs(std::vector<Rational> c) {
  QPoly p;
  p.c_ = std::move(c);
  p.trim();
  return p;
}

Rational QPoly::lc() const {
  if (c_.empty()) throw precondition_error("leading coefficient of zero");
  return c_.back();
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(i);
  return from_coeffs(std::move(d));
}

Rational QPoly::eval(const Rational& x) const {
  Rational v = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
  return v;
}

QPoly QPoly::monic() const {
  if (is_zero()) return {};
  Rational l = lc();
  std::vector<Rational> c = c_;
  for (auto& v : c) v /= l;
  return from_coeffs(std::move(c));
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return QPoly::from_coeffs(std::move(c));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return QPoly::from_coeffs(std::move(c));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return QPoly::from_coeffs(std::move(c));
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& num, const QPoly& den) {
  if (den.is_zero()) throw precondition_error("division by zero polynomial");
  std::vector<Rational> r = num.c_;
  int dd = den.degree();
  std::vector<Rational> q(num.degree() >= dd ? num.degree() - dd + 1 : 0,
                          Rational(0));
  for (int i = static_cast<int>(r.size()) - 1; i >= dd; --i) {
    if (r[i] == 0) continue;
    Rational f = r[i] / den.c_.back();
    q[i - dd] = f;
    for (int j = 0; j <= dd; ++j) r[i - dd + j] -= f * den.c_[j];
  }
  return {from_coeffs(std::move(q)), from_coeffs(std::move(r))};
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.monic();
}

}  // namespace dessins
