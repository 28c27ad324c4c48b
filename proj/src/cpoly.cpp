#include "dessins/cpoly.hpp"

#include <algorithm>
#include <cmath>

namespace dessins {

CPoly CPoly::constant(cd v) {
  CPoly p;
  if (v != cd(0)) p.c_ = {v};
  return p;
}

CPoly CPoly::x() {
  CPoly p;
  p.c_ = {cd(0), cd(1)};
  return p;
}

CPoly CPoly::from_roots(const std::vector<cd>& roots, cd lead) {
  std::vector<cd> c = {lead};  // ascending
  for (cd r : roots) {
    c.push_back(cd(0));
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] = -r * c[0];
  }
  return CPoly(std::move(c));
}

CPoly CPoly::from_qpoly(const QPoly& q) {
  std::vector<cd> c;
  c.reserve(q.coeffs().size());
  for (const auto& r : q.coeffs()) c.emplace_back(static_cast<double>(r), 0.0);
  return CPoly(std::move(c));
}

cd CPoly::lc() const {
  if (c_.empty()) throw precondition_error("leading coefficient of zero");
  return c_.back();
}

cd CPoly::eval(cd z) const {
  cd v = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * z + *it;
  return v;
}

CPoly CPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<cd> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * double(i);
  return CPoly(std::move(d));
}

void CPoly::trim(double rel_tol) {
  double maxmag = 0.0;
  for (auto v : c_) maxmag = std::max(maxmag, std::abs(v));
  trim_abs(rel_tol > 0 ? rel_tol * maxmag : 0.0);
}

void CPoly::trim_abs(double cut) {
  while (!c_.empty() && std::abs(c_.back()) <= cut) c_.pop_back();
}

CPoly operator+(const CPoly& a, const CPoly& b) {
  std::vector<cd> c(std::max(a.c_.size(), b.c_.size()), cd(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return CPoly(std::move(c));
}

CPoly operator-(const CPoly& a, const CPoly& b) {
  std::vector<cd> c(std::max(a.c_.size(), b.c_.size()), cd(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return CPoly(std::move(c));
}

CPoly operator*(const CPoly& a, const CPoly& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<cd> c(a.c_.size() + b.c_.size() - 1, cd(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return CPoly(std::move(c));
}

CPoly CPoly::scaled(cd v) const {
  std::vector<cd> c = c_;
  for (auto& x : c) x *= v;
  return CPoly(std::move(c));
}

std::vector<cd> poly_roots(const CPoly& p, int max_iter) {
  const int n = p.degree();
  if (n <= 0) return {};
  if (n == 1) return {-p.at(0) / p.at(1)};
  // Cauchy bound for the initial circle.
  double bound = 0.0;
  for (int i = 0; i < n; ++i)
    bound = std::max(bound, std::abs(p.at(i) / p.lc()));
  double radius = 1.0 + bound;
  std::vector<cd> z(n);
  for (int i = 0; i < n; ++i) {
    double ang = 2.0 * M_PI * i / n + 0.3763;
    z[i] = std::polar(radius * (0.6 + 0.4 * (i % 3) / 2.0), ang);
  }
  CPoly dp = p.derivative();
  for (int iter = 0; iter < max_iter; ++iter) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      cd pv = p.eval(z[i]);
      cd dv = dp.eval(z[i]);
      cd w = dv != cd(0) ? pv / dv : pv;
      cd s = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      cd denom = 1.0 - w * s;
      cd step = denom != cd(0) ? w / denom : w;
      z[i] -= step;
      worst = std::max(worst, std::abs(step));
    }
    if (worst < 1e-14 * std::max(1.0, radius)) break;
  }
  std::sort(z.begin(), z.end(), [](cd a, cd b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return z;
}

std::vector<std::pair<cd, int>> cluster_points(std::vector<cd> pts, double tol) {
  std::vector<std::pair<cd, int>> out;
  std::vector<bool> used(pts.size(), false);
  std::sort(pts.begin(), pts.end(), [](cd a, cd b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    cd sum = pts[i];
    int count = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(pts[j] - sum / double(count)) <= tol) {
        sum += pts[j];
        ++count;
        used[j] = true;
      }
    }
    out.emplace_back(sum / double(count), count);
  }
  return out;
}

}  // namespace dessins
