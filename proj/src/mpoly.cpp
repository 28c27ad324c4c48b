#include "dessins/mpoly.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace dessins {

MPoly MPoly::constant(std::size_t nvars, const Rational& r) {
  MPoly p(nvars);
  if (r != 0) p.terms_[Expo(nvars, 0)] = r;
  return p;
}

MPoly MPoly::var(std::size_t nvars, std::size_t i) {
  MPoly p(nvars);
  Expo e(nvars, 0);
  e.at(i) = 1;
  p.terms_[e] = 1;
  return p;
}

MPoly& MPoly::add_term(const Expo& e, const Rational& coeff) {
  if (coeff == 0) return *this;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  MPoly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

MPoly operator-(const MPoly& a, const MPoly& b) {
  MPoly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
  return out;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly out(a.nvars_);
  MPoly::Expo e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) {
        unsigned s = unsigned(ea[i]) + unsigned(eb[i]);
        if (s > 255) throw internal_error("exponent overflow in MPoly");
        e[i] = static_cast<std::uint8_t>(s);
      }
      out.add_term(e, ca * cb);
    }
  return out;
}

MPoly MPoly::scaled(const Rational& r) const {
  MPoly out(nvars_);
  if (r == 0) return out;
  for (const auto& [e, c] : terms_) out.terms_[e] = c * r;
  return out;
}

MPoly MPoly::derivative(std::size_t var) const {
  MPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Expo d = e;
    --d[var];
    out.add_term(d, c * Rational(int(e[var])));
  }
  return out;
}

MPoly MPoly::pow(std::uint32_t k) const {
  MPoly acc = constant(nvars_, 1);
  MPoly base = *this;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    if (k >>= 1) base = base * base;
  }
  return acc;
}

std::uint32_t MPoly::var_content(std::size_t var) const {
  std::uint32_t k = UINT32_MAX;
  for (const auto& [e, c] : terms_) k = std::min<std::uint32_t>(k, e[var]);
  return terms_.empty() ? 0 : k;
}

MPoly MPoly::without_var_power(std::size_t var, std::uint32_t k) const {
  MPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    Expo d = e;
    if (d[var] < k) throw internal_error("var power not a common factor");
    d[var] = static_cast<std::uint8_t>(d[var] - k);
    out.terms_[d] = c;
  }
  return out;
}

std::complex<double> MPoly::eval(
    const std::vector<std::complex<double>>& x) const {
  std::complex<double> acc = 0.0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> t = static_cast<double>(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
    acc += t;
  }
  return acc;
}

std::string MPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << rational_string(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*" << names[i];
      if (e[i] > 1) os << "^" << int(e[i]);
    }
  }
  return os.str();
}

ZMPoly zmp_constant(const MPoly& m) {
  if (m.is_zero()) return {};
  return {m};
}

void zmp_trim(ZMPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

int zmp_degree(const ZMPoly& a) { return static_cast<int>(a.size()) - 1; }

ZMPoly zmp_add(const ZMPoly& a, const ZMPoly& b) {
  ZMPoly out(std::max(a.size(), b.size()));
  std::size_t nv = 0;
  if (!a.empty()) nv = a[0].nvars();
  if (!b.empty()) nv = b[0].nvars();
  for (auto& m : out) m = MPoly(nv);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = out[i] + a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = out[i] + b[i];
  zmp_trim(out);
  return out;
}

ZMPoly zmp_sub(const ZMPoly& a, const ZMPoly& b) {
  ZMPoly nb = b;
  for (auto& m : nb) m = m.scaled(-1);
  return zmp_add(a, nb);
}

ZMPoly zmp_mul(const ZMPoly& a, const ZMPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZMPoly out(a.size() + b.size() - 1, MPoly(a[0].nvars()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = out[i + j] + a[i] * b[j];
  zmp_trim(out);
  return out;
}

ZMPoly zmp_scale(const ZMPoly& a, const MPoly& m) {
  ZMPoly out;
  out.reserve(a.size());
  for (const auto& c : a) out.push_back(c * m);
  zmp_trim(out);
  return out;
}

ZMPoly zmp_pow(const ZMPoly& a, std::uint32_t k) {
  if (k == 0) {
    if (a.empty()) throw precondition_error("0^0 of z-polynomial");
    return {MPoly::constant(a[0].nvars(), 1)};
  }
  ZMPoly acc = a;
  for (std::uint32_t i = 1; i < k; ++i) acc = zmp_mul(acc, a);
  return acc;
}

ZMPoly zmp_derivative(const ZMPoly& a) {
  if (a.size() <= 1) return {};
  ZMPoly out(a.size() - 1, MPoly(a[0].nvars()));
  for (std::size_t i = 1; i < a.size(); ++i)
    out[i - 1] = a[i].scaled(Rational(i));
  zmp_trim(out);
  return out;
}

MPoly zmp_eval_at_var(const ZMPoly& a, std::size_t var, std::size_t nvars) {
  MPoly acc(nvars);
  MPoly z = MPoly::var(nvars, var);
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
  return acc;
}

MPoly resultant_z(const ZMPoly& a, const ZMPoly& b, std::size_t nvars) {
  const int da = zmp_degree(a), db = zmp_degree(b);
  if (da < 0 || db < 0) return MPoly(nvars);  // resultant with 0
  if (da == 0) return a[0].pow(static_cast<std::uint32_t>(db));
  if (db == 0) return b[0].pow(static_cast<std::uint32_t>(da));
  const int k = da + db;
  // Sylvester matrix: db rows of a's coefficients, da rows of b's.
  std::vector<std::vector<MPoly>> M(k, std::vector<MPoly>(k, MPoly(nvars)));
  for (int r = 0; r < db; ++r)
    for (int j = 0; j <= da; ++j) M[r][r + j] = a[da - j];
  for (int r = 0; r < da; ++r)
    for (int j = 0; j <= db; ++j) M[db + r][r + j] = b[db - j];
  // Determinant by expanding rows against memoised column subsets.
  std::unordered_map<std::uint32_t, MPoly> dp;
  dp.emplace(0u, MPoly::constant(nvars, 1));
  for (int r = 0; r < k; ++r) {
    std::unordered_map<std::uint32_t, MPoly> next;
    for (const auto& [mask, val] : dp) {
      int below = 0;
      for (int col = 0; col < k; ++col) {
        if (mask & (1u << col)) {
          ++below;
          continue;
        }
        if (M[r][col].is_zero()) continue;
        MPoly term = val * M[r][col];
        if (below % 2) term = term.scaled(-1);
        auto [it, fresh] = next.try_emplace(mask | (1u << col), term);
        if (!fresh) it->second = it->second + term;
      }
    }
    dp = std::move(next);
  }
  std::uint32_t full = k == 32 ? 0xffffffffu : ((1u << k) - 1);
  auto it = dp.find(full);
  return it == dp.end() ? MPoly(nvars) : it->second;
}

ZMPoly zmp_pseudo_remainder(ZMPoly num, const ZMPoly& den) {
  zmp_trim(num);
  const int dd = zmp_degree(den);
  if (dd < 0) throw precondition_error("pseudo-division by zero");
  const MPoly& lcd = den.back();
  while (zmp_degree(num) >= dd && !num.empty()) {
    const int dn = zmp_degree(num);
    MPoly lcn = num.back();
    ZMPoly scaled_num = zmp_scale(num, lcd);
    ZMPoly shift(static_cast<std::size_t>(dn - dd), MPoly(lcn.nvars()));
    shift.insert(shift.end(), den.begin(), den.end());
    ZMPoly sub = zmp_scale(shift, lcn);
    num = zmp_sub(scaled_num, sub);
    if (zmp_degree(num) >= dn)
      throw internal_error("pseudo-division failed to reduce the degree");
  }
  return num;
}

}  // namespace dessins
