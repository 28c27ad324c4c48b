#include "dessins/group.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "dessins/errors.hpp"

namespace dessins {

struct ConcreteGroup::Lookup {
  std::unordered_map<Perm, std::uint32_t, PermHash> by_perm;
  struct TupleHash {
    std::size_t operator()(const std::vector<std::uint8_t>& v) const {
      std::size_t h = 1469598103934665603ull;
      for (auto b : v) {
        h ^= b;
        h *= 1099511628211ull;
      }
      return h;
    }
  };
  std::unordered_map<std::vector<std::uint8_t>, std::uint32_t, TupleHash> by_tuple;
};

ConcreteGroup ConcreteGroup::from_permutations(const Perm& sigma,
                                               const Perm& alpha,
                                               std::uint64_t cap) {
  if (sigma.degree() != alpha.degree())
    throw precondition_error("generator degree mismatch");
  ConcreteGroup g;
  g.lookup_ = std::make_shared<Lookup>();
  Perm id(sigma.degree());
  g.perms_.push_back(id);
  g.lookup_->by_perm[id] = 0;
  g.edges_.push_back({});
  const Perm gens[2] = {sigma, alpha};
  for (std::size_t head = 0; head < g.perms_.size(); ++head) {
    if (g.perms_.size() > cap)
      throw cap_exceeded("group closure exceeds element cap");
    for (std::uint8_t l = 0; l < 2; ++l) {
      Perm f = compose(g.perms_[head], gens[l]);
      auto [it, inserted] = g.lookup_->by_perm.try_emplace(
          std::move(f), static_cast<std::uint32_t>(g.perms_.size()));
      if (inserted) {
        g.perms_.push_back(it->first);
        g.edges_.push_back({static_cast<std::uint32_t>(head), l});
      }
    }
  }
  g.size_ = g.perms_.size();
  g.sigma_ = g.lookup_->by_perm.at(sigma);
  g.alpha_ = g.lookup_->by_perm.at(alpha);
  g.abelian_ = commutes(sigma, alpha);
  g.finalize(cap);
  return g;
}

ConcreteGroup ConcreteGroup::product_subgroup(
    std::vector<std::shared_ptr<const ConcreteGroup>> comps,
    std::uint64_t cap) {
  ConcreteGroup g;
  g.comps_ = std::move(comps);
  g.lookup_ = std::make_shared<Lookup>();
  const std::size_t k = g.comps_.size();
  for (const auto& c : g.comps_)
    if (c->order() > 255)
      throw precondition_error("component order too large for tuple storage");
  std::vector<std::uint8_t> id(k, 0), sg(k), al(k);
  for (std::size_t i = 0; i < k; ++i) {
    sg[i] = static_cast<std::uint8_t>(g.comps_[i]->sigma());
    al[i] = static_cast<std::uint8_t>(g.comps_[i]->alpha());
  }
  g.tuples_.push_back(id);
  g.lookup_->by_tuple[id] = 0;
  g.edges_.push_back({});
  const std::vector<std::uint8_t> gens[2] = {sg, al};
  for (std::size_t head = 0; head < g.tuples_.size(); ++head) {
    if (g.tuples_.size() > cap)
      throw cap_exceeded("group closure exceeds element cap");
    for (std::uint8_t l = 0; l < 2; ++l) {
      std::vector<std::uint8_t> f(k);
      for (std::size_t i = 0; i < k; ++i)
        f[i] = static_cast<std::uint8_t>(
            g.comps_[i]->mult(g.tuples_[head][i], gens[l][i]));
      auto [it, inserted] = g.lookup_->by_tuple.try_emplace(
          std::move(f), static_cast<std::uint32_t>(g.tuples_.size()));
      if (inserted) {
        g.tuples_.push_back(it->first);
        g.edges_.push_back({static_cast<std::uint32_t>(head), l});
      }
    }
  }
  g.size_ = g.tuples_.size();
  g.sigma_ = g.lookup_->by_tuple.at(sg);
  g.alpha_ = g.lookup_->by_tuple.at(al);
  g.abelian_ = g.mult(g.sigma_, g.alpha_) == g.mult(g.alpha_, g.sigma_);
  g.finalize(cap);
  return g;
}

std::uint32_t ConcreteGroup::index_of_perm(const Perm& p) const {
  auto it = lookup_->by_perm.find(p);
  if (it == lookup_->by_perm.end())
    throw internal_error("product left the group (perm backend)");
  return it->second;
}

std::uint32_t ConcreteGroup::index_of_tuple(
    const std::vector<std::uint8_t>& t) const {
  auto it = lookup_->by_tuple.find(t);
  if (it == lookup_->by_tuple.end())
    throw internal_error("product left the group (tuple backend)");
  return it->second;
}

std::uint32_t ConcreteGroup::raw_mult(std::uint32_t a, std::uint32_t b) const {
  if (!perms_.empty()) return index_of_perm(compose(perms_[a], perms_[b]));
  const std::size_t k = comps_.size();
  std::vector<std::uint8_t> f(k);
  for (std::size_t i = 0; i < k; ++i)
    f[i] = static_cast<std::uint8_t>(comps_[i]->mult(tuples_[a][i], tuples_[b][i]));
  return index_of_tuple(f);
}

void ConcreteGroup::finalize(std::uint64_t /*cap*/) {
  if (size_ <= kTableLimit) {
    table_.resize(size_ * size_);
    for (std::uint32_t a = 0; a < size_; ++a)
      for (std::uint32_t b = 0; b < size_; ++b)
        table_[a * size_ + b] = raw_mult(a, b);
  }
  inv_.assign(size_, UINT32_MAX);
  for (std::uint32_t a = 0; a < size_; ++a) {
    if (inv_[a] != UINT32_MAX) continue;
    if (!perms_.empty()) {
      inv_[a] = index_of_perm(perms_[a].inverse());
    } else {
      const std::size_t k = comps_.size();
      std::vector<std::uint8_t> f(k);
      for (std::size_t i = 0; i < k; ++i)
        f[i] = static_cast<std::uint8_t>(comps_[i]->inverse(tuples_[a][i]));
      inv_[a] = index_of_tuple(f);
    }
    inv_[inv_[a]] = a;
  }
  if (mult(0, sigma_) != sigma_ || mult(alpha_, 0) != alpha_)
    throw internal_error("identity law failed");
}

std::uint32_t ConcreteGroup::mult(std::uint32_t a, std::uint32_t b) const {
  if (!table_.empty()) return table_[a * size_ + b];
  return raw_mult(a, b);
}

std::uint32_t ConcreteGroup::inverse(std::uint32_t a) const { return inv_[a]; }

std::uint32_t ConcreteGroup::power(std::uint32_t a, std::uint64_t k) const {
  std::uint32_t acc = 0, base = a;
  while (k > 0) {
    if (k & 1) acc = mult(acc, base);
    base = mult(base, base);
    k >>= 1;
  }
  return acc;
}

std::uint32_t ConcreteGroup::element_order(std::uint32_t a) const {
  std::uint32_t e = a, n = 1;
  while (e != 0) {
    e = mult(e, a);
    ++n;
  }
  return n;
}

std::uint32_t ConcreteGroup::exponent() const {
  std::uint64_t l = 1;
  for (std::uint32_t a = 0; a < size_; ++a)
    l = std::lcm<std::uint64_t>(l, element_order(a));
  return static_cast<std::uint32_t>(l);
}

std::vector<std::uint32_t> ConcreteGroup::derived_subgroup() const {
  if (abelian_) return {0};
  // Commutators are closed under inversion, so the subgroup they generate
  // is the closure of the commutator set under multiplication.
  std::vector<bool> is_comm(size_, false);
  std::vector<std::uint32_t> gens;
  for (std::uint32_t a = 0; a < size_; ++a)
    for (std::uint32_t b = 0; b < size_; ++b) {
      std::uint32_t c =
          mult(mult(inverse(a), inverse(b)), mult(a, b));
      if (!is_comm[c]) {
        is_comm[c] = true;
        gens.push_back(c);
      }
    }
  std::vector<bool> in(size_, false);
  std::vector<std::uint32_t> out = {0};
  in[0] = true;
  for (std::size_t head = 0; head < out.size(); ++head)
    for (auto g : gens) {
      std::uint32_t x = mult(out[head], g);
      if (!in[x]) {
        in[x] = true;
        out.push_back(x);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint8_t> ConcreteGroup::word_of(std::uint32_t e) const {
  std::vector<std::uint8_t> w;
  while (edges_[e].parent != UINT32_MAX) {
    w.push_back(edges_[e].letter);
    e = edges_[e].parent;
  }
  std::reverse(w.begin(), w.end());
  return w;
}

std::uint32_t ConcreteGroup::eval_word(const std::vector<std::uint8_t>& word,
                                       std::uint32_t sigma_img,
                                       std::uint32_t alpha_img) const {
  std::uint32_t acc = 0;
  for (auto l : word) acc = mult(acc, l == 0 ? sigma_img : alpha_img);
  return acc;
}

const Perm& ConcreteGroup::perm_of(std::uint32_t e) const {
  if (perms_.empty()) throw internal_error("not a permutation-backed group");
  return perms_[e];
}

Perm eval_word_perm(const std::vector<std::uint8_t>& word, const Perm& sigma,
                    const Perm& alpha) {
  Perm acc(sigma.degree());
  for (auto l : word) acc = compose(acc, l == 0 ? sigma : alpha);
  return acc;
}

std::string word_string(const std::vector<std::uint8_t>& word) {
  if (word.empty()) return "1";
  std::string s;
  for (auto l : word) {
    if (!s.empty()) s += ' ';
    s += (l == 0 ? 's' : 'a');
  }
  return s;
}

}  // namespace dessins
