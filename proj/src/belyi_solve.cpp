#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "dessins/belyi.hpp"

namespace dessins {

namespace {

// Term-list form of an MPoly restricted to the solver's unknowns, for fast
// repeated evaluation.
struct CompiledPoly {
  struct Term {
    cd coeff;
    std::vector<std::pair<std::uint16_t, std::uint8_t>> powers;  // (var, exp)
  };
  std::vector<Term> terms;

  cd eval(const std::vector<cd>& x) const {
    cd acc = 0.0;
    for (const auto& t : terms) {
      cd v = t.coeff;
      for (auto [var, e] : t.powers)
        for (unsigned k = 0; k < e; ++k) v *= x[var];
      acc += v;
    }
    return acc;
  }
};

CompiledPoly compile(const MPoly& p,
                     const std::vector<std::int32_t>& var_slot) {
  CompiledPoly out;
  for (const auto& [e, c] : p.terms()) {
    CompiledPoly::Term t;
    t.coeff = cd(static_cast<double>(c), 0.0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (var_slot[i] < 0)
        throw internal_error("equation mentions an eliminated variable");
      t.powers.emplace_back(static_cast<std::uint16_t>(var_slot[i]), e[i]);
    }
    out.terms.push_back(std::move(t));
  }
  return out;
}

struct CompiledSystem {
  std::size_t unknowns = 0;
  std::vector<CompiledPoly> eqs;
  std::vector<std::vector<CompiledPoly>> jac;  // [eq][unknown]

  double residual(const std::vector<cd>& x) const {
    double r = 0.0;
    for (const auto& e : eqs) r = std::max(r, std::abs(e.eval(x)));
    return r;
  }
};

CompiledSystem compile_system(const std::vector<MPoly>& eqs,
                              std::size_t nvars,
                              const std::vector<std::uint32_t>& unknown_vars) {
  std::vector<std::int32_t> slot(nvars, -1);
  for (std::size_t i = 0; i < unknown_vars.size(); ++i)
    slot[unknown_vars[i]] = static_cast<std::int32_t>(i);
  CompiledSystem sys;
  sys.unknowns = unknown_vars.size();
  for (const auto& e : eqs) {
    CompiledPoly ce = compile(e, slot);
    // Normalize so the largest coefficient has unit magnitude; remainder
    // cascades otherwise produce equations on wildly different scales.
    double scale = 0.0;
    for (const auto& t : ce.terms) scale = std::max(scale, std::abs(t.coeff));
    if (scale <= 0.0) scale = 1.0;
    for (auto& t : ce.terms) t.coeff /= scale;
    sys.eqs.push_back(std::move(ce));
    std::vector<CompiledPoly> row;
    for (auto v : unknown_vars) {
      CompiledPoly cj = compile(e.derivative(v), slot);
      for (auto& t : cj.terms) t.coeff /= scale;
      row.push_back(std::move(cj));
    }
    sys.jac.push_back(std::move(row));
  }
  return sys;
}

// Damped Gauss-Newton from one start; returns the converged point or
// nullopt.  Overdetermined systems are handled by least-squares steps.
// Iterates until no step length improves the residual any more: points
// attracted to a degenerate solution component land on it to machine
// precision, where the separation filter can see them.
std::optional<std::vector<cd>> newton_run(const CompiledSystem& sys,
                                          std::vector<cd> x, int max_iter,
                                          double tol) {
  const std::size_t m = sys.eqs.size(), n = sys.unknowns;
  Eigen::MatrixXcd J(m, n);
  Eigen::VectorXcd r(m);
  auto norm2 = [&](const std::vector<cd>& p) {
    double s = 0.0;
    for (const auto& e : sys.eqs) {
      double a = std::abs(e.eval(p));
      s += a * a;
    }
    return s;
  };
  double f = norm2(x);
  for (int iter = 0; iter < max_iter; ++iter) {
    if (f < 1e-30) break;
    for (std::size_t i = 0; i < m; ++i) {
      r(i) = sys.eqs[i].eval(x);
      for (std::size_t j = 0; j < n; ++j) J(i, j) = sys.jac[i][j].eval(x);
    }
    Eigen::VectorXcd step = J.colPivHouseholderQr().solve(-r);
    if (!step.allFinite()) return std::nullopt;
    double t = 1.0;
    bool accepted = false;
    for (int back = 0; back < 45; ++back) {
      std::vector<cd> y = x;
      for (std::size_t j = 0; j < n; ++j) y[j] += t * step(j);
      double fy = norm2(y);
      if (fy < f) {
        x = std::move(y);
        f = fy;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
  }
  if (sys.residual(x) <= tol) return x;
  return std::nullopt;
}

// Coefficients of the monic polynomial with the given roots, ascending,
// leading 1 dropped.
std::vector<cd> coeffs_from_roots(const std::vector<cd>& roots) {
  std::vector<cd> c = {cd(1.0, 0.0)};
  for (cd r : roots) {
    c.push_back(cd(0.0, 0.0));
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] = -r * c[0];
  }
  c.pop_back();  // drop the leading 1 (it sits at the back after the loop)
  return c;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t idx) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (idx + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

bool lex_less(const std::vector<cd>& a, const std::vector<cd>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return a.size() < b.size();
}

double point_distance(const std::vector<cd>& a, const std::vector<cd>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Run the multistart batch (a data-parallel kernel) and return converged
// points deduplicated deterministically.  Starts come from a caller-supplied
// generator so they can respect the geometry of the unknowns.
using StartGen = std::function<std::vector<cd>(std::uint64_t)>;

std::vector<std::vector<cd>> multistart(const CompiledSystem& sys,
                                        const SolveOptions& opts, int starts,
                                        const StartGen& make_start) {
  std::vector<std::vector<std::vector<cd>>> found(kMaxChunks);
  run_chunks(static_cast<std::size_t>(starts), opts.exec,
             [&](std::size_t chunk, std::size_t b, std::size_t e) {
               auto& local = found[chunk];
               for (std::size_t i = b; i < e; ++i) {
                 auto x0 = make_start(mix_seed(opts.seed, i));
                 auto sol = newton_run(sys, std::move(x0), opts.max_iter,
                                       opts.tol);
                 if (sol) local.push_back(std::move(*sol));
               }
             });
  std::vector<std::vector<cd>> all;
  for (auto& v : found)
    all.insert(all.end(), std::make_move_iterator(v.begin()),
               std::make_move_iterator(v.end()));
  std::sort(all.begin(), all.end(), lex_less);
  std::vector<std::vector<cd>> reps;
  for (auto& s : all) {
    bool dup = false;
    for (const auto& r : reps)
      if (point_distance(s, r) < opts.separation) {
        dup = true;
        break;
      }
    if (!dup) reps.push_back(std::move(s));
  }
  return reps;
}

// Passport of a reconstructed fraction, read back through A = F'/(F(F-1)):
// black and white degrees from the integer residues of A, face degrees from
// the denominator roots plus the pole at infinity.  Candidates on the
// degenerate components of the cleared system (coincident vertices) fail
// this check, which is the float-mode stand-in for the eta equation.
bool passport_matches(const RationalFraction& f, const Passport& want,
                      double tol) {
  const int n = f.degree();
  CPoly den = f.den();
  CycleType faces;
  faces.push_back(static_cast<std::uint32_t>(n - den.degree()));
  if (den.degree() > 0) {
    auto roots = poly_roots(den);
    double scale = 1.0;
    for (cd r : roots) scale = std::max(scale, std::abs(r));
    for (auto& [c, m] : cluster_points(roots, 2e-2 * scale))
      faces.push_back(static_cast<std::uint32_t>(m));
  }
  std::sort(faces.begin(), faces.end(), std::greater<>());
  if (faces != want.faces) return false;

  CycleType black, white;
  try {
    for (const auto& pr : partial_fractions(fraction_to_A(f), tol)) {
      double re = pr.residue.real();
      long r = std::lround(re);
      if (std::abs(pr.residue.imag()) > tol || std::abs(re - double(r)) > tol ||
          r == 0)
        return false;
      if (r > 0)
        white.push_back(static_cast<std::uint32_t>(r));
      else
        black.push_back(static_cast<std::uint32_t>(-r));
    }
  } catch (const error&) {
    return false;
  }
  std::sort(black.begin(), black.end(), std::greater<>());
  std::sort(white.begin(), white.end(), std::greater<>());
  return black == want.black && white == want.white;
}

// Vertex positions of a solved system point, ungrouping coefficient blocks
// by root finding.
std::vector<cd> ungroup_vertices(const PolynomialSystem& sys,
                                 const std::vector<cd>& full, char color_filter) {
  std::vector<cd> out;
  for (const auto& g : sys.groups) {
    if (color_filter != 0 && g.color != color_filter) continue;
    if (g.pinned) {
      out.push_back(cd(double(*g.pinned), 0.0));
      continue;
    }
    if (g.size == 1) {
      out.push_back(full[g.vars[0]]);
      continue;
    }
    std::vector<cd> coeffs;
    for (auto v : g.vars) coeffs.push_back(full[v]);
    coeffs.push_back(cd(1.0, 0.0));
    for (cd r : poly_roots(CPoly(std::move(coeffs)))) out.push_back(r);
  }
  return out;
}

CPoly group_product(const PolynomialSystem& sys, const std::vector<cd>& full,
                    char color) {
  CPoly acc = CPoly::constant(1.0);
  for (const auto& g : sys.groups) {
    if (g.color != color) continue;
    CPoly p;
    if (g.pinned) {
      p = CPoly({cd(-double(*g.pinned), 0.0), cd(1.0, 0.0)});
    } else if (g.size == 1) {
      p = CPoly({-full[g.vars[0]], cd(1.0, 0.0)});
    } else {
      std::vector<cd> coeffs;
      for (auto v : g.vars) coeffs.push_back(full[v]);
      coeffs.push_back(cd(1.0, 0.0));
      p = CPoly(std::move(coeffs));
    }
    for (std::uint32_t k = 0; k < g.vertex_degree; ++k) acc = acc * p;
  }
  return acc;
}

int auto_starts(std::size_t unknowns, int requested) {
  if (requested > 0) return requested;
  auto u = static_cast<int>(unknowns);
  return std::min(24000, std::max(600, 300 * u * u));
}

}  // namespace

std::vector<BelyiCandidate> solve_system(const PolynomialSystem& sys,
                                         const SolveOptions& opts) {
  // Unknowns: everything except eta; equations: everything except the eta
  // distinctness identity, which the separation filter enforces instead.
  std::vector<std::uint32_t> unknowns;
  for (std::uint32_t v = 0; v < sys.var_names.size(); ++v)
    if (v != sys.eta_var) unknowns.push_back(v);
  std::vector<MPoly> eqs;
  for (std::size_t i = 0; i < sys.equations.size(); ++i)
    if (i != sys.eta_equation) eqs.push_back(sys.equations[i]);
  CompiledSystem cs = compile_system(eqs, sys.var_names.size(), unknowns);

  // Starts: random vertex positions expanded to coefficient blocks, so the
  // sampling measure matches the elementary-symmetric growth of group
  // coefficients.
  std::vector<std::int32_t> slot(sys.var_names.size(), -1);
  for (std::size_t i = 0; i < unknowns.size(); ++i)
    slot[unknowns[i]] = static_cast<std::int32_t>(i);
  auto make_start = [&](std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> logs(-0.7, 1.1);
    double scale = std::exp(logs(rng));
    std::vector<cd> x(cs.unknowns, cd(0.0, 0.0));
    for (const auto& grp : sys.groups) {
      if (grp.pinned) continue;
      std::vector<cd> roots(grp.size);
      for (auto& r : roots) r = cd(scale * g(rng), scale * g(rng));
      if (grp.size == 1) {
        x[slot[grp.vars[0]]] = roots[0];
      } else {
        auto cf = coeffs_from_roots(roots);
        for (std::uint32_t j = 0; j < grp.size; ++j)
          x[slot[grp.vars[j]]] = cf[j];
      }
    }
    x[slot[sys.lambda_var]] = cd(3.0 * g(rng), 3.0 * g(rng));
    return x;
  };

  const int starts = auto_starts(cs.unknowns, opts.starts);
  auto points = multistart(cs, opts, starts, make_start);

  std::vector<BelyiCandidate> out;
  for (auto& pt : points) {
    // Scatter back to full variable indexing (eta absent).
    std::vector<cd> full(sys.var_names.size(), cd(0.0, 0.0));
    for (std::size_t i = 0; i < unknowns.size(); ++i) full[unknowns[i]] = pt[i];

    BelyiCandidate cand;
    cand.solution = pt;
    for (auto v : unknowns) cand.var_names.push_back(sys.var_names[v]);
    cand.residual = cs.residual(pt);
    cand.vertices = ungroup_vertices(sys, full, 0);
    double sep = 1e30;
    for (std::size_t i = 0; i < cand.vertices.size(); ++i)
      for (std::size_t j = i + 1; j < cand.vertices.size(); ++j)
        sep = std::min(sep, std::abs(cand.vertices[i] - cand.vertices[j]));
    cand.separation = cand.vertices.size() > 1 ? sep : 1.0;
    if (cand.separation < opts.separation) continue;  // degenerate point

    // Recover F = B / (B - W) from the group data.  Cancellation noise in
    // B - W sits at the scale of B and W, not of the difference.
    CPoly B = group_product(sys, full, 'b');
    CPoly W = group_product(sys, full, 'w');
    double bw_scale = 1.0;
    for (cd v : B.coeffs()) bw_scale = std::max(bw_scale, std::abs(v));
    for (cd v : W.coeffs()) bw_scale = std::max(bw_scale, std::abs(v));
    CPoly D = B - W;
    D.trim_abs(1e-9 * bw_scale);
    if (D.is_zero()) continue;
    cand.fraction = RationalFraction::floating(B, D, 1e-9);
    if (!passport_matches(cand.fraction, sys.source, 1e-4)) continue;
    out.push_back(std::move(cand));
  }
  return out;
}

BelyiCandidate tree_shabat(const Dessin& d, const SolveOptions& opts) {
  if (!is_connected(d)) throw precondition_error("tree must be connected");
  Passport pass = passport(d);
  if (pass.genus != 0 || pass.faces.size() != 1)
    throw precondition_error("not a planar tree (need genus 0, one face)");

  // Unknowns: black group coefficients (one max-degree vertex pinned at 0)
  // and the leading coefficient c.  F = c * prod B_g^(deg).
  const std::uint32_t pinned_degree = pass.black[0];
  std::vector<std::string> names;
  struct BG {
    std::uint32_t degree, size;
    bool pinned;
    std::vector<std::uint32_t> vars;
  };
  std::vector<BG> bgroups;
  bgroups.push_back({pinned_degree, 1, true, {}});
  {
    std::size_t i = 1;
    std::uint32_t vertex_index = 1;
    while (i < pass.black.size()) {
      std::size_t j = i;
      while (j < pass.black.size() && pass.black[j] == pass.black[i]) ++j;
      BG g{pass.black[i], static_cast<std::uint32_t>(j - i), false, {}};
      for (std::uint32_t k = 0; k < g.size; ++k) {
        names.push_back((g.size == 1 ? "b" + std::to_string(vertex_index)
                                     : "bg" + std::to_string(vertex_index) +
                                           "_" + std::to_string(k)));
        g.vars.push_back(static_cast<std::uint32_t>(names.size() - 1));
      }
      vertex_index += g.size;
      bgroups.push_back(std::move(g));
      i = j;
    }
  }
  names.push_back("c");
  const std::uint32_t c_var = static_cast<std::uint32_t>(names.size() - 1);
  const std::size_t nv = names.size();

  ZMPoly F = {MPoly::var(nv, c_var)};
  for (const auto& g : bgroups) {
    ZMPoly p;
    if (g.pinned) {
      p = {MPoly(nv), MPoly::constant(nv, 1)};  // z
    } else if (g.size == 1) {
      p = {MPoly::var(nv, g.vars[0]).scaled(-1), MPoly::constant(nv, 1)};
    } else {
      p.resize(g.size + 1, MPoly(nv));
      for (std::uint32_t k = 0; k < g.size; ++k) p[k] = MPoly::var(nv, g.vars[k]);
      p[g.size] = MPoly::constant(nv, 1);
    }
    F = zmp_mul(F, zmp_pow(p, g.degree));
  }
  ZMPoly dF = zmp_derivative(F);
  ZMPoly FF1 = zmp_sub(zmp_mul(F, F), F);
  ZMPoly rem = zmp_pseudo_remainder(FF1, dF);

  // Pseudo-division scales the remainder by powers of lc(F') = n*c, which
  // plants a spurious solution component at c = 0; strip the c-content of
  // every coefficient equation.
  std::vector<MPoly> eqs;
  for (const auto& m : rem) {
    if (m.is_zero()) continue;
    eqs.push_back(m.without_var_power(c_var, m.var_content(c_var)));
  }
  // White pin: 1 is a white vertex of maximal degree m0: F(1) = 1 and the
  // first m0-1 derivatives vanish there.
  const std::uint32_t m0 = pass.white[0];
  ZMPoly der = F;
  MPoly F_at_1(nv);
  for (const auto& m : der) F_at_1 = F_at_1 + m;
  eqs.push_back(F_at_1 - MPoly::constant(nv, 1));
  for (std::uint32_t k = 1; k < m0; ++k) {
    der = zmp_derivative(der);
    MPoly v(nv);
    for (const auto& m : der) v = v + m;
    eqs.push_back(v);
  }

  std::vector<std::uint32_t> unknowns(nv);
  for (std::uint32_t i = 0; i < nv; ++i) unknowns[i] = i;
  CompiledSystem cs = compile_system(eqs, nv, unknowns);
  auto make_start = [&](std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> logs(-0.7, 1.1);
    std::uniform_real_distribution<double> logc(-1.0, 2.0);
    double scale = std::exp(logs(rng));
    std::vector<cd> x(nv, cd(0.0, 0.0));
    for (const auto& grp : bgroups) {
      if (grp.pinned) continue;
      std::vector<cd> roots(grp.size);
      for (auto& r : roots) r = cd(scale * g(rng), scale * g(rng));
      if (grp.size == 1) {
        x[grp.vars[0]] = roots[0];
      } else {
        auto cf = coeffs_from_roots(roots);
        for (std::uint32_t j = 0; j < grp.size; ++j) x[grp.vars[j]] = cf[j];
      }
    }
    double cs_ = std::pow(10.0, logc(rng));
    x[c_var] = cd(cs_ * g(rng), cs_ * g(rng));
    return x;
  };
  const int starts = auto_starts(cs.unknowns, opts.starts);

  // Batched search with early exit once a candidate verifies against d.
  const int batch = 512;
  std::vector<std::vector<cd>> seen;
  for (int done = 0; done < starts; done += batch) {
    SolveOptions bopts = opts;
    bopts.seed = mix_seed(opts.seed, 7777 + done);
    auto points = multistart(cs, bopts, std::min(batch, starts - done),
                             make_start);
    std::sort(points.begin(), points.end(), lex_less);
    for (auto& pt : points) {
      bool dup = false;
      for (const auto& s : seen)
        if (point_distance(pt, s) < opts.separation) {
          dup = true;
          break;
        }
      if (dup) continue;
      seen.push_back(pt);
      // Reconstruct F and screen by monodromy.
      CPoly P = CPoly::constant(pt[c_var]);
      double sep = 1e30;
      {
        std::vector<cd> verts = {cd(0.0, 0.0)};
        for (const auto& g : bgroups) {
          if (g.pinned) continue;
          if (g.size == 1) {
            verts.push_back(pt[g.vars[0]]);
            continue;
          }
          std::vector<cd> coeffs;
          for (auto v : g.vars) coeffs.push_back(pt[v]);
          coeffs.push_back(cd(1.0, 0.0));
          for (cd r : poly_roots(CPoly(std::move(coeffs)))) verts.push_back(r);
        }
        for (std::size_t i = 0; i < verts.size(); ++i)
          for (std::size_t j = i + 1; j < verts.size(); ++j)
            sep = std::min(sep, std::abs(verts[i] - verts[j]));
        if (verts.size() <= 1) sep = 1.0;
        CPoly zp = CPoly({cd(0.0, 0.0), cd(1.0, 0.0)});
        CPoly acc = CPoly::constant(pt[c_var]);
        std::size_t vi = 0;
        for (const auto& g : bgroups) {
          if (g.pinned) {
            for (std::uint32_t k = 0; k < g.degree; ++k) acc = acc * zp;
            ++vi;
            continue;
          }
          for (std::uint32_t s = 0; s < g.size; ++s, ++vi) {
            CPoly lin({-verts[vi], cd(1.0, 0.0)});
            for (std::uint32_t k = 0; k < g.degree; ++k) acc = acc * lin;
          }
        }
        P = acc;
      }
      if (sep < opts.separation) continue;
      if (std::abs(pt[c_var]) < 1e-8) continue;
      BelyiCandidate cand;
      cand.solution = pt;
      cand.var_names.assign(names.begin(), names.end());
      cand.residual = cs.residual(pt);
      cand.separation = sep;
      cand.fraction = RationalFraction::floating(P, CPoly::constant(1.0), 1e-9);
      try {
        auto vr = verify(d, cand.fraction);
        if (vr.ok) return cand;
      } catch (const error&) {
        continue;  // continuation failure on a bad candidate
      }
    }
  }
  throw continuation_error("no verified Shabat polynomial within budget");
}

}  // namespace dessins
