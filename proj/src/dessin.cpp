#include "dessins/dessin.hpp"

#include <algorithm>

namespace dessins {

Dessin::Dessin(Perm sigma, Perm alpha)
    : sigma_(std::move(sigma)), alpha_(std::move(alpha)) {
  if (sigma_.degree() != alpha_.degree())
    throw precondition_error("sigma and alpha must have equal degree");
  if (sigma_.degree() == 0) throw precondition_error("a dessin needs a dart");
  Perm p = phi();
  if (!compose(sigma_, compose(alpha_, p)).is_identity())
    throw internal_error("sigma*alpha*phi != 1");
}

Dessin make_dessin(const Perm& sigma, const Perm& alpha) {
  return Dessin(sigma, alpha);
}

PermGroup cartographic_group(const Dessin& d) {
  return PermGroup::from_generators(d.darts(), {d.sigma(), d.alpha()});
}

bool is_connected(const Dessin& d) {
  // Orbit of dart 0 under <sigma, alpha> without building the chain.
  std::vector<bool> seen(d.darts(), false);
  std::vector<std::uint32_t> stack = {0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::uint32_t x = stack.back();
    stack.pop_back();
    for (const Perm* p : {&d.sigma(), &d.alpha()}) {
      std::uint32_t y = (*p)[x];
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == d.darts();
}

int euler_characteristic(const Dessin& d) {
  auto ncycles = [](const Perm& p) {
    return static_cast<int>(p.cycle_type().size());
  };
  return ncycles(d.sigma()) + ncycles(d.alpha()) - static_cast<int>(d.darts()) +
         ncycles(d.phi());
}

int genus(const Dessin& d) {
  if (!is_connected(d))
    throw precondition_error("genus requires a connected dessin");
  int chi = euler_characteristic(d);
  if (chi % 2 != 0) throw internal_error("odd Euler characteristic");
  return (2 - chi) / 2;
}

Passport passport(const Dessin& d) {
  if (!is_connected(d))
    throw precondition_error("passport requires a connected dessin");
  Passport p;
  p.black = d.sigma().cycle_type();
  p.white = d.alpha().cycle_type();
  p.faces = d.phi().cycle_type();
  p.genus = genus(d);
  return p;
}

Dessin dual(const Dessin& d) {
  // Third component alpha^-1 sigma alpha is forced: phi' = (phi*alpha)^-1.
  return Dessin(d.phi(), d.alpha());
}

Dessin swap_colors(const Dessin& d) { return Dessin(d.alpha(), d.sigma()); }

std::optional<Perm> is_isomorphic(const Dessin& a, const Dessin& b) {
  if (a.darts() != b.darts()) return std::nullopt;
  return simultaneous_conjugacy({a.sigma(), a.alpha()}, {b.sigma(), b.alpha()});
}

namespace {

// Relabel by the traversal order anchored at `base`: pop a dart, then visit
// its sigma- and alpha-images.  Returns the relabelled image tables.
std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> trace_labels(
    const Dessin& d, std::uint32_t base) {
  const std::size_t n = d.darts();
  std::vector<std::uint32_t> label(n, UINT32_MAX);
  std::vector<std::uint32_t> queue;
  queue.reserve(n);
  label[base] = 0;
  queue.push_back(base);
  std::uint32_t next = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::uint32_t x = queue[head];
    for (const Perm* p : {&d.sigma(), &d.alpha()}) {
      std::uint32_t y = (*p)[x];
      if (label[y] == UINT32_MAX) {
        label[y] = next++;
        queue.push_back(y);
      }
    }
  }
  std::vector<std::uint32_t> s(n), a(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    s[label[x]] = label[d.sigma()[x]];
    a[label[x]] = label[d.alpha()[x]];
  }
  return {std::move(s), std::move(a)};
}

}  // namespace

Dessin canonical_form(const Dessin& d) {
  if (!is_connected(d))
    throw precondition_error("canonical form requires a connected dessin");
  std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> best;
  bool have = false;
  for (std::uint32_t base = 0; base < d.darts(); ++base) {
    auto cand = trace_labels(d, base);
    if (!have || cand < best) {
      best = std::move(cand);
      have = true;
    }
  }
  return Dessin(Perm::from_images(std::move(best.first)),
                Perm::from_images(std::move(best.second)));
}

TrianglePresentation::TrianglePresentation(Perm a, Perm b, Perm c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  const std::size_t t = a_.degree();
  if (b_.degree() != t || c_.degree() != t)
    throw precondition_error("triangle permutations must share a degree");
  if (t == 0 || t % 2 != 0)
    throw precondition_error("triangle count must be positive and even");
  for (const Perm* p : {&a_, &b_, &c_}) {
    if (!compose(*p, *p).is_identity())
      throw precondition_error("a, b, c must be involutions");
    for (std::uint32_t x = 0; x < t; ++x)
      if ((*p)[x] == x)
        throw precondition_error(
            "a, b, c must be fixed-point-free (boundary is not supported)");
  }
}

TrianglePresentation to_triangles(const Dessin& d) {
  const std::size_t n = d.darts();
  const Perm& sg = d.sigma();
  const Perm& al = d.alpha();
  Perm sgi = sg.inverse(), ali = al.inverse();
  std::vector<std::uint32_t> a(2 * n), b(2 * n), c(2 * n);
  for (std::uint32_t x = 0; x < n; ++x) {
    b[x] = x + n;
    b[x + n] = x;
    // a reflects across the face-black side: (d,e) -> (sigma^e d, -e).
    a[x] = sg[x] + n;
    a[x + n] = sgi[x];
    // c reflects across the face-white side: (d,e) -> (alpha^-e d, -e),
    // the sign that makes bc restrict to alpha on the black triangles.
    c[x] = ali[x] + n;
    c[x + n] = al[x];
  }
  return TrianglePresentation(Perm::from_images(std::move(a)),
                              Perm::from_images(std::move(b)),
                              Perm::from_images(std::move(c)));
}

std::variant<Dessin, UnorientedReport> from_triangles(
    const TrianglePresentation& t) {
  const std::size_t m = t.triangles();
  // 2-color the adjacency graph of a, b, c; least triangle of each
  // component is black.
  std::vector<int> color(m, -1);
  std::vector<std::uint32_t> parent(m, UINT32_MAX);
  for (std::uint32_t root = 0; root < m; ++root) {
    if (color[root] != -1) continue;
    color[root] = 0;
    std::vector<std::uint32_t> stack = {root};
    while (!stack.empty()) {
      std::uint32_t x = stack.back();
      stack.pop_back();
      for (const Perm* p : {&t.a(), &t.b(), &t.c()}) {
        std::uint32_t y = (*p)[x];
        if (color[y] == -1) {
          color[y] = 1 - color[x];
          parent[y] = x;
          stack.push_back(y);
        } else if (color[y] == color[x]) {
          // Odd closed walk: path(root..x) + edge + reversed path(y..root).
          UnorientedReport rep;
          std::vector<std::uint32_t> px, py;
          for (std::uint32_t v = x; v != UINT32_MAX; v = parent[v])
            px.push_back(v);
          for (std::uint32_t v = y; v != UINT32_MAX; v = parent[v])
            py.push_back(v);
          std::reverse(px.begin(), px.end());
          rep.odd_cycle = std::move(px);
          rep.odd_cycle.insert(rep.odd_cycle.end(), py.begin(), py.end());
          return rep;
        }
      }
    }
  }
  // Darts = black triangles, reindexed in increasing triangle order.
  std::vector<std::uint32_t> dart_of(m, UINT32_MAX);
  std::vector<std::uint32_t> blacks;
  for (std::uint32_t x = 0; x < m; ++x)
    if (color[x] == 0) {
      dart_of[x] = static_cast<std::uint32_t>(blacks.size());
      blacks.push_back(x);
    }
  const std::size_t n = blacks.size();
  if (2 * n != m) throw internal_error("black/white triangle count mismatch");
  std::vector<std::uint32_t> s(n), al(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint32_t x = blacks[i];
    std::uint32_t sx = t.b()[t.a()[x]];  // x^(ab)
    std::uint32_t ax = t.c()[t.b()[x]];  // x^(bc)
    if (dart_of[sx] == UINT32_MAX || dart_of[ax] == UINT32_MAX)
      throw internal_error("ab or bc left the black triangles");
    s[i] = dart_of[sx];
    al[i] = dart_of[ax];
  }
  return Dessin(Perm::from_images(std::move(s)),
                Perm::from_images(std::move(al)));
}

}  // namespace dessins
