#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "dessins/belyi.hpp"
#include "dessins/dessin.hpp"

namespace dessins {

namespace {

struct FiberTracker {
  CPoly P, Q, dP, dQ;
  double scale = 1.0;

  explicit FiberTracker(const RationalFraction& f)
      : P(f.num()), Q(f.den()), dP(P.derivative()), dQ(Q.derivative()) {
    for (cd c : P.coeffs()) scale = std::max(scale, std::abs(c));
    for (cd c : Q.coeffs()) scale = std::max(scale, std::abs(c));
  }

  std::vector<cd> full_fiber(cd t) const {
    CPoly p = P - Q.scaled(t);
    p.trim(1e-14);
    return poly_roots(p);
  }

  bool newton_point(cd t, cd& z) const {
    for (int it = 0; it < 48; ++it) {
      cd val = P.eval(z) - t * Q.eval(z);
      cd der = dP.eval(z) - t * dQ.eval(z);
      if (der == cd(0)) return false;
      cd step = val / der;
      z -= step;
      if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(z))) return true;
    }
    return false;
  }

  // One continuation step of the whole fiber; false when the step must be
  // rejected (Newton failure, collision, or insufficient match margin).
  bool step(cd t_next, const std::vector<cd>& cur, std::vector<cd>& next,
            double margin) const {
    next = cur;
    double moved = 0.0;
    for (auto& z : next)
      if (!newton_point(t_next, z)) return false;
    for (std::size_t i = 0; i < cur.size(); ++i)
      moved = std::max(moved, std::abs(next[i] - cur[i]));
    double closest = 1e300;
    for (std::size_t i = 0; i < next.size(); ++i)
      for (std::size_t j = i + 1; j < next.size(); ++j)
        closest = std::min(closest, std::abs(next[i] - next[j]));
    if (next.size() > 1 && closest <= margin * moved) return false;
    return true;
  }
};

void sort_fiber(std::vector<cd>& f) {
  std::sort(f.begin(), f.end(), [](cd a, cd b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

// Continue the fiber along t(s), s in [0,1], with adaptive halving.
std::vector<cd> continue_fiber(const FiberTracker& ft,
                               const std::function<cd(double)>& path,
                               std::vector<cd> cur,
                               const MonodromyOptions& opts) {
  double s = 0.0;
  double h = 1.0 / opts.init_steps;
  const double h0 = h;
  while (s < 1.0) {
    double s2 = std::min(1.0, s + h);
    std::vector<cd> next;
    if (ft.step(path(s2), cur, next, opts.margin)) {
      cur = std::move(next);
      s = s2;
      h = std::min(h * 1.5, h0);
    } else {
      h *= 0.5;
      if (h < opts.min_step)
        throw continuation_error(
            "fiber continuation ambiguous below the minimal step");
    }
  }
  return cur;
}

// Match each point of `end` to its nearest point of `base`; the result is
// the loop permutation (start index -> end index in base ordering).
Perm match_to_base(const std::vector<cd>& base, const std::vector<cd>& end,
                   double margin) {
  const std::size_t n = base.size();
  std::vector<std::uint32_t> img(n, UINT32_MAX);
  std::vector<bool> taken(n, false);
  double worst_d1 = 0.0, best_d2 = 1e300;
  for (std::size_t i = 0; i < n; ++i) {
    double d1 = 1e300, d2 = 1e300;
    std::size_t arg = 0;
    for (std::size_t j = 0; j < n; ++j) {
      double dist = std::abs(end[i] - base[j]);
      if (dist < d1) {
        d2 = d1;
        d1 = dist;
        arg = j;
      } else if (dist < d2) {
        d2 = dist;
      }
    }
    if (taken[arg]) throw continuation_error("fiber endpoint collision");
    taken[arg] = true;
    img[i] = static_cast<std::uint32_t>(arg);
    worst_d1 = std::max(worst_d1, d1);
    best_d2 = std::min(best_d2, d2);
  }
  if (n > 1 && best_d2 <= margin * worst_d1)
    throw continuation_error("fiber endpoint match margin too small");
  return Perm::from_images(std::move(img));
}

}  // namespace

MonodromyResult monodromy(const RationalFraction& f,
                          const MonodromyOptions& opts) {
  const int deg = f.degree();
  if (deg < 1) throw precondition_error("fraction must be nonconstant");
  FiberTracker ft(f);

  // Base fiber over b (default 1/2); perturb b when the fiber is ramified.
  double b = opts.base_point;
  std::vector<cd> base;
  for (int attempt = 0; attempt < 12; ++attempt) {
    base = ft.full_fiber(cd(b, 0.0));
    bool ok = static_cast<int>(base.size()) == deg;
    double sep = 1e300;
    for (std::size_t i = 0; ok && i < base.size(); ++i)
      for (std::size_t j = i + 1; j < base.size(); ++j)
        sep = std::min(sep, std::abs(base[i] - base[j]));
    if (ok && (base.size() <= 1 || sep > 1e-6)) break;
    b = opts.base_point + 0.013 * (attempt + 1);
    if (attempt == 11)
      throw continuation_error("could not find an unramified base fiber");
  }
  sort_fiber(base);

  // Loops around 0 and 1 through the base point, counterclockwise.
  auto loop0 = [b](double s) { return cd(b, 0.0) * std::polar(1.0, 2 * M_PI * s); };
  auto loop1 = [b](double s) {
    return cd(1.0, 0.0) - cd(1.0 - b, 0.0) * std::polar(1.0, 2 * M_PI * s);
  };

  MonodromyResult res;
  res.base_fiber = base;
  res.base_point = b;
  std::vector<cd> end0 = continue_fiber(ft, loop0, base, opts);
  res.sigma = match_to_base(base, end0, opts.margin);
  std::vector<cd> end1 = continue_fiber(ft, loop1, base, opts);
  res.alpha = match_to_base(base, end1, opts.margin);
  return res;
}

VerificationResult verify(const Dessin& d, const RationalFraction& f,
                          const MonodromyOptions& opts) {
  if (f.degree() != static_cast<int>(d.darts()))
    throw precondition_error("fraction degree differs from the dart count");
  MonodromyResult mr = monodromy(f, opts);
  VerificationResult out;
  out.mono_sigma = mr.sigma;
  out.mono_alpha = mr.alpha;
  Dessin md(mr.sigma, mr.alpha);
  out.witness = is_isomorphic(md, d);
  out.ok = out.witness.has_value();
  return out;
}

PreimageGraph sample_preimage(const RationalFraction& f, int samples,
                              const MonodromyOptions& opts) {
  if (samples < 1) throw precondition_error("need at least one sample");
  const int deg = f.degree();
  if (deg < 1) throw precondition_error("fraction must be nonconstant");
  FiberTracker ft(f);

  MonodromyResult mr = monodromy(f, opts);  // base fiber + consistency
  std::vector<cd> base = mr.base_fiber;
  const double b = mr.base_point;

  std::vector<double> ts(samples);
  for (int k = 0; k < samples; ++k) ts[k] = double(k + 1) / (samples + 1);

  PreimageGraph g;
  g.dart_paths.assign(deg, {});
  std::vector<std::vector<std::pair<double, cd>>> acc(deg);
  for (std::size_t i = 0; i < base.size(); ++i)
    acc[i].push_back({b, base[i]});

  auto sweep = [&](bool increasing) {
    std::vector<double> pts;
    for (double t : ts)
      if (increasing ? t > b : t < b) pts.push_back(t);
    std::sort(pts.begin(), pts.end());
    if (!increasing) std::reverse(pts.begin(), pts.end());
    std::vector<cd> cur = base;
    double from = b;
    for (double t : pts) {
      auto path = [from, t](double s) {
        return cd(from + (t - from) * s, 0.0);
      };
      cur = continue_fiber(ft, path, cur, opts);
      for (int i = 0; i < deg; ++i) acc[i].push_back({t, cur[i]});
      from = t;
    }
  };
  sweep(false);
  sweep(true);

  // Vertex markers from the critical fibers.
  auto add_clusters = [&](const CPoly& p, std::vector<cd>& out) {
    if (p.degree() < 1) return;
    auto roots = poly_roots(p);
    double scale = 1.0;
    for (cd r : roots) scale = std::max(scale, std::abs(r));
    for (auto& [c, m] : cluster_points(roots, 2e-2 * scale)) out.push_back(c);
  };
  CPoly P = f.num(), Q = f.den();
  add_clusters(P, g.black_vertices);
  add_clusters(P - Q, g.white_vertices);

  for (int i = 0; i < deg; ++i) {
    auto& pts = acc[i];
    std::sort(pts.begin(), pts.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    // Close the polyline with the nearest vertex at each end.
    auto nearest = [](const std::vector<cd>& vs, cd z) {
      cd best = z;
      double bd = 1e300;
      for (cd v : vs) {
        double d = std::abs(v - z);
        if (d < bd) {
          bd = d;
          best = v;
        }
      }
      return best;
    };
    std::vector<cd> path;
    if (!g.black_vertices.empty())
      path.push_back(nearest(g.black_vertices, pts.front().second));
    for (auto& [t, z] : pts) path.push_back(z);
    if (!g.white_vertices.empty())
      path.push_back(nearest(g.white_vertices, pts.back().second));
    g.dart_paths[i] = std::move(path);
  }
  return g;
}

std::string preimage_svg(const PreimageGraph& g) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  auto see = [&](cd z) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  };
  for (const auto& p : g.dart_paths)
    for (cd z : p) see(z);
  for (cd z : g.black_vertices) see(z);
  for (cd z : g.white_vertices) see(z);
  if (xmin > xmax) {
    xmin = ymin = -1;
    xmax = ymax = 1;
  }
  double w = std::max(xmax - xmin, 1e-6), h = std::max(ymax - ymin, 1e-6);
  double pad = 0.08 * std::max(w, h);
  xmin -= pad;
  xmax += pad;
  ymin -= pad;
  ymax += pad;
  w = xmax - xmin;
  h = ymax - ymin;
  const double size = 800.0;
  double sc = size / std::max(w, h);
  auto X = [&](cd z) { return (z.real() - xmin) * sc; };
  auto Y = [&](cd z) { return (ymax - z.imag()) * sc; };

  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * sc
     << "\" height=\"" << h * sc << "\" viewBox=\"0 0 " << w * sc << " "
     << h * sc << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& p : g.dart_paths) {
    os << "<polyline fill=\"none\" stroke=\"#333333\" stroke-width=\"1.5\" "
          "points=\"";
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) os << ' ';
      os << X(p[i]) << ',' << Y(p[i]);
    }
    os << "\"/>\n";
  }
  double r = 0.012 * size;
  for (cd z : g.black_vertices)
    os << "<circle cx=\"" << X(z) << "\" cy=\"" << Y(z) << "\" r=\"" << r
       << "\" fill=\"black\"/>\n";
  for (cd z : g.white_vertices)
    os << "<circle cx=\"" << X(z) << "\" cy=\"" << Y(z) << "\" r=\"" << r
       << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1.2\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace dessins
