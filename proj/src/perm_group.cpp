#include "dessins/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace dessins {

PermGroup PermGroup::from_generators(std::size_t degree, std::vector<Perm> gens) {
  if (degree == 0) throw precondition_error("degree must be at least 1");
  for (const auto& g : gens)
    if (g.degree() != degree)
      throw precondition_error("generator degree mismatch");
  PermGroup G;
  G.degree_ = degree;
  G.gens_ = std::move(gens);
  G.build_chain();
  return G;
}

void PermGroup::build_chain() {
  levels_.resize(degree_);
  for (std::uint32_t b = 0; b < degree_; ++b) {
    auto& L = levels_[b];
    L.base = b;
    L.slot.assign(degree_, -1);
    L.slot[b] = 0;
    L.transversal = {Perm(degree_)};
    L.orbit = {b};
  }
  for (const auto& g : gens_) add_generator(0, g);
  order_ = 1;
  for (const auto& L : levels_) order_ *= L.transversal.size();
}

void PermGroup::add_generator(std::size_t level, Perm g) {
  // g stabilizes the bases of all levels below `level`, so it belongs to
  // the generator sets of every level from `level` up to the first level
  // whose base it moves.
  std::size_t j = level;
  while (j < degree_ && g[levels_[j].base] == levels_[j].base) ++j;
  if (j == degree_) return;  // identity
  for (std::size_t i = level; i <= j; ++i) levels_[i].gens.push_back(g);
  for (std::size_t i = level; i <= j; ++i) extend_orbit(i);
}

void PermGroup::extend_orbit(std::size_t level) {
  auto& L = levels_[level];
  // Deterministic closure: scan orbit points in discovery order against all
  // current generators; new Schreier generators are sifted one level down.
  std::size_t head = 0;
  std::vector<std::pair<std::uint32_t, std::size_t>> schreier_todo;
  while (head < L.orbit.size()) {
    std::uint32_t p = L.orbit[head];
    Perm u = L.transversal[L.slot[p]];  // by value: the vector may grow below
    for (std::size_t si = 0; si < L.gens.size(); ++si) {
      const Perm& s = L.gens[si];
      std::uint32_t q = s[p];
      if (L.slot[q] < 0) {
        L.slot[q] = static_cast<std::int32_t>(L.transversal.size());
        L.transversal.push_back(compose(u, s));
        L.orbit.push_back(q);
      } else {
        schreier_todo.emplace_back(p, si);
      }
    }
    ++head;
  }
  for (auto [p, si] : schreier_todo) {
    const Perm& u = L.transversal[L.slot[p]];
    const Perm& s = L.gens[si];
    std::uint32_t q = s[p];
    Perm sg = compose(compose(u, s), L.transversal[L.slot[q]].inverse());
    // Strip sg through the chain below; the residue, if any, extends it.
    std::size_t j = level + 1;
    while (j < degree_) {
      std::uint32_t img = sg[levels_[j].base];
      if (img == levels_[j].base) {
        ++j;
        continue;
      }
      if (levels_[j].slot[img] < 0) break;
      sg = compose(sg, levels_[j].transversal[levels_[j].slot[img]].inverse());
      ++j;
    }
    if (!sg.is_identity()) add_generator(level + 1, std::move(sg));
  }
}

bool PermGroup::contains(const Perm& g) const {
  if (g.degree() != degree_) return false;
  Perm h = g;
  for (std::size_t j = 0; j < degree_; ++j) {
    std::uint32_t img = h[levels_[j].base];
    if (img == levels_[j].base) continue;
    if (levels_[j].slot[img] < 0) return false;
    h = compose(h, levels_[j].transversal[levels_[j].slot[img]].inverse());
  }
  return h.is_identity();
}

std::vector<std::uint32_t> PermGroup::orbit(std::uint32_t point) const {
  std::vector<bool> seen(degree_, false);
  std::vector<std::uint32_t> out = {point};
  seen[point] = true;
  for (std::size_t head = 0; head < out.size(); ++head)
    for (const auto& g : gens_) {
      std::uint32_t q = g[out[head]];
      if (!seen[q]) {
        seen[q] = true;
        out.push_back(q);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::uint32_t>> PermGroup::orbits() const {
  std::vector<bool> seen(degree_, false);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t p = 0; p < degree_; ++p) {
    if (seen[p]) continue;
    auto orb = orbit(p);
    for (auto q : orb) seen[q] = true;
    out.push_back(std::move(orb));
  }
  return out;
}

bool PermGroup::is_transitive() const { return orbit(0).size() == degree_; }

std::vector<Perm> PermGroup::elements(std::uint64_t cap) const {
  if (order_ > cap) throw cap_exceeded("group order exceeds enumeration cap");
  std::unordered_set<Perm, PermHash> seen;
  std::deque<Perm> queue;
  seen.insert(Perm(degree_));
  queue.push_back(Perm(degree_));
  while (!queue.empty()) {
    Perm e = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens_) {
      Perm f = compose(e, g);
      if (seen.insert(f).second) queue.push_back(std::move(f));
    }
  }
  std::vector<Perm> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Extend rep -> target to an equivariant map between two orbits of the same
// generator action.  Returns the point map restricted to `from_orbit` or
// nullopt when no equivariant extension exists.
std::optional<std::vector<std::uint32_t>> equivariant_extension(
    const std::vector<Perm>& gens, std::size_t degree,
    const std::vector<std::uint32_t>& from_orbit, std::uint32_t rep,
    std::uint32_t target) {
  std::vector<std::uint32_t> map(degree, UINT32_MAX);
  std::vector<std::uint32_t> stack = {rep};
  map[rep] = target;
  while (!stack.empty()) {
    std::uint32_t x = stack.back();
    stack.pop_back();
    for (const auto& g : gens) {
      std::uint32_t y = g[x];
      std::uint32_t ym = g[map[x]];
      if (map[y] == UINT32_MAX) {
        map[y] = ym;
        stack.push_back(y);
      } else if (map[y] != ym) {
        return std::nullopt;
      }
    }
  }
  // Injectivity on the orbit.
  std::unordered_set<std::uint32_t> hit;
  for (auto x : from_orbit)
    if (!hit.insert(map[x]).second) return std::nullopt;
  return map;
}

}  // namespace

PermGroup centralizer_in_symmetric(const PermGroup& g) {
  const std::size_t n = g.degree();
  const auto& gens = g.generators();
  auto orbits = g.orbits();
  std::vector<Perm> cgens;

  // Per-orbit centralizer elements: one for each consistent image of the
  // orbit representative.
  for (const auto& orb : orbits) {
    for (auto target : orb) {
      if (target == orb[0]) continue;
      auto map = equivariant_extension(gens, n, orb, orb[0], target);
      if (!map) continue;
      std::vector<std::uint32_t> images(n);
      for (std::uint32_t x = 0; x < n; ++x) images[x] = x;
      for (auto x : orb) images[x] = (*map)[x];
      cgens.push_back(Perm::from_images(std::move(images)));
    }
  }

  // Swaps between isomorphic orbits (as sets with the generator action).
  std::vector<bool> matched(orbits.size(), false);
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    if (matched[i]) continue;
    std::size_t prev = i;
    for (std::size_t j = i + 1; j < orbits.size(); ++j) {
      if (matched[j] || orbits[j].size() != orbits[i].size()) continue;
      std::optional<std::vector<std::uint32_t>> iso;
      for (auto target : orbits[j]) {
        iso = equivariant_extension(gens, n, orbits[prev], orbits[prev][0], target);
        if (iso) break;
      }
      if (!iso) continue;
      matched[j] = true;
      std::vector<std::uint32_t> images(n);
      for (std::uint32_t x = 0; x < n; ++x) images[x] = x;
      for (auto x : orbits[prev]) images[x] = (*iso)[x];
      for (auto x : orbits[prev]) images[(*iso)[x]] = x;
      cgens.push_back(Perm::from_images(std::move(images)));
      prev = j;  // chain of adjacent swaps generates the full symmetric part
    }
  }

  return PermGroup::from_generators(n, std::move(cgens));
}

namespace {

struct ConjSearch {
  // Forward and inverse images of both generator pairs.
  const Perm* from[4];
  const Perm* to[4];
  std::size_t n;
  std::vector<std::uint32_t> map, rmap;
  std::vector<std::uint32_t> trail;

  bool assign(std::uint32_t x, std::uint32_t y) {
    // Propagate c(x)=y through both generator pairs and their inverses.
    std::vector<std::uint32_t> stack = {x};
    map[x] = y;
    rmap[y] = x;
    trail.push_back(x);
    while (!stack.empty()) {
      std::uint32_t a = stack.back();
      stack.pop_back();
      for (int k = 0; k < 4; ++k) {
        std::uint32_t b = (*from[k])[a];
        std::uint32_t bm = (*to[k])[map[a]];
        if (map[b] == UINT32_MAX) {
          if (rmap[bm] != UINT32_MAX) return false;
          map[b] = bm;
          rmap[bm] = b;
          trail.push_back(b);
          stack.push_back(b);
        } else if (map[b] != bm) {
          return false;
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail.size() > mark) {
      std::uint32_t x = trail.back();
      trail.pop_back();
      rmap[map[x]] = UINT32_MAX;
      map[x] = UINT32_MAX;
    }
  }

  bool solve() {
    std::uint32_t x = UINT32_MAX;
    for (std::uint32_t i = 0; i < n; ++i)
      if (map[i] == UINT32_MAX) {
        x = i;
        break;
      }
    if (x == UINT32_MAX) return true;
    for (std::uint32_t y = 0; y < n; ++y) {
      if (rmap[y] != UINT32_MAX) continue;
      std::size_t mark = trail.size();
      if (assign(x, y) && solve()) return true;
      undo(mark);
    }
    return false;
  }
};

}  // namespace

std::optional<Perm> simultaneous_conjugacy(const std::pair<Perm, Perm>& from,
                                           const std::pair<Perm, Perm>& to) {
  const std::size_t n = from.first.degree();
  if (from.second.degree() != n || to.first.degree() != n ||
      to.second.degree() != n)
    throw precondition_error("degree mismatch in simultaneous conjugacy");
  if (from.first.cycle_type() != to.first.cycle_type() ||
      from.second.cycle_type() != to.second.cycle_type())
    return std::nullopt;

  Perm p1i = from.first.inverse(), p2i = from.second.inverse();
  Perm q1i = to.first.inverse(), q2i = to.second.inverse();

  ConjSearch s;
  s.from[0] = &from.first;
  s.from[1] = &from.second;
  s.from[2] = &p1i;
  s.from[3] = &p2i;
  s.to[0] = &to.first;
  s.to[1] = &to.second;
  s.to[2] = &q1i;
  s.to[3] = &q2i;
  s.n = n;
  s.map.assign(n, UINT32_MAX);
  s.rmap.assign(n, UINT32_MAX);
  if (!s.solve()) return std::nullopt;

  Perm c = Perm::from_images(std::move(s.map));
  if (from.first.conjugated_by(c) != to.first ||
      from.second.conjugated_by(c) != to.second)
    throw internal_error("conjugacy witness failed verification");
  return c;
}

}  // namespace dessins
