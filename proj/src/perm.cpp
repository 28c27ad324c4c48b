#include "dessins/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace dessins {

Perm::Perm(std::size_t n) : img_(n) {
  std::iota(img_.begin(), img_.end(), 0u);
}

Perm Perm::from_images(std::vector<std::uint32_t> images) {
  std::vector<bool> seen(images.size(), false);
  for (auto v : images) {
    if (v >= images.size() || seen[v])
      throw precondition_error("image table is not a bijection");
    seen[v] = true;
  }
  Perm p;
  p.img_ = std::move(images);
  return p;
}

Perm Perm::from_cycles(std::size_t n,
                       const std::vector<std::vector<std::uint32_t>>& cycles) {
  Perm p(n);
  std::vector<bool> used(n, false);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      std::uint32_t a = cyc[i];
      std::uint32_t b = cyc[(i + 1) % cyc.size()];
      if (a >= n || b >= n) throw precondition_error("cycle point out of range");
      if (used[a]) throw precondition_error("repeated point in cycles");
      used[a] = true;
      p.img_[a] = b;
    }
  }
  return from_images(std::move(p.img_));
}

bool Perm::is_identity() const {
  for (std::uint32_t x = 0; x < img_.size(); ++x)
    if (img_[x] != x) return false;
  return true;
}

Perm Perm::inverse() const {
  std::vector<std::uint32_t> inv(img_.size());
  for (std::uint32_t x = 0; x < img_.size(); ++x) inv[img_[x]] = x;
  Perm p;
  p.img_ = std::move(inv);
  return p;
}

Perm Perm::power(long long k) const {
  const std::uint32_t ord = order();
  long long r = k % static_cast<long long>(ord);
  if (r < 0) r += ord;
  Perm acc(degree());
  Perm base = *this;
  while (r > 0) {
    if (r & 1) acc = compose(acc, base);
    base = compose(base, base);
    r >>= 1;
  }
  return acc;
}

std::vector<std::vector<std::uint32_t>> Perm::cycles(bool include_fixed) const {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<bool> seen(img_.size(), false);
  for (std::uint32_t x = 0; x < img_.size(); ++x) {
    if (seen[x]) continue;
    std::vector<std::uint32_t> cyc;
    std::uint32_t y = x;
    do {
      seen[y] = true;
      cyc.push_back(y);
      y = img_[y];
    } while (y != x);
    if (cyc.size() > 1 || include_fixed) out.push_back(std::move(cyc));
  }
  return out;
}

CycleType Perm::cycle_type() const {
  CycleType t;
  for (const auto& c : cycles(true)) t.push_back(static_cast<std::uint32_t>(c.size()));
  std::sort(t.begin(), t.end(), std::greater<>());
  return t;
}

std::uint32_t Perm::order() const {
  std::uint64_t l = 1;
  for (auto len : cycle_type()) l = std::lcm<std::uint64_t>(l, len);
  return static_cast<std::uint32_t>(l);
}

Perm Perm::conjugated_by(const Perm& c) const {
  if (c.degree() != degree())
    throw precondition_error("degree mismatch in conjugation");
  std::vector<std::uint32_t> im(degree());
  for (std::uint32_t x = 0; x < degree(); ++x) im[c.img_[x]] = c.img_[img_[x]];
  Perm p;
  p.img_ = std::move(im);
  return p;
}

Perm compose(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree())
    throw precondition_error("degree mismatch in compose");
  std::vector<std::uint32_t> im(p.degree());
  for (std::uint32_t x = 0; x < p.degree(); ++x) im[x] = q.img_[p.img_[x]];
  Perm r;
  r.img_ = std::move(im);
  return r;
}

bool commutes(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree()) return false;
  for (std::uint32_t x = 0; x < p.degree(); ++x)
    if (q.img_[p.img_[x]] != p.img_[q.img_[x]]) return false;
  return true;
}

std::size_t PermHash::operator()(const Perm& p) const {
  std::size_t h = 1469598103934665603ull;
  for (auto v : p.images()) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

Perm parse_cycles(const std::string& text, std::size_t degree) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw precondition_error("expected '(' in cycle notation");
    ++i;
    std::vector<std::uint32_t> cyc;
    for (;;) {
      skip_ws();
      if (i >= text.size()) throw precondition_error("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {  // commas between points are tolerated
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw precondition_error("expected point in cycle notation");
      std::uint64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        ++i;
      }
      if (v == 0 || v > degree)
        throw precondition_error("cycle point out of range (points are 1-based)");
      cyc.push_back(static_cast<std::uint32_t>(v - 1));
    }
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    skip_ws();
  }
  return Perm::from_cycles(degree, cycles);
}

std::string cycle_string(const Perm& p) {
  // Canonical print: each cycle rotated so its least point comes first,
  // cycles sorted by least point, fixed points omitted.
  auto cycles = p.cycles(false);
  for (auto& c : cycles) {
    auto it = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), it, c.end());
  }
  std::sort(cycles.begin(), cycles.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  if (cycles.empty()) return "()";
  std::ostringstream os;
  for (const auto& c : cycles) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) os << ' ';
      os << c[i] + 1;
    }
    os << ')';
  }
  return os.str();
}

}  // namespace dessins
