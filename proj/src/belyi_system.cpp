#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "dessins/belyi.hpp"
#include "json.hpp"

namespace dessins {

namespace {

CPoly qpoly_to_cpoly(const QPoly& q) { return CPoly::from_qpoly(q); }

// Cancel pairs of nearly equal roots between numerator and denominator and
// rebuild; the float-mode analogue of dividing by the gcd.
void reduce_float(CPoly& num, CPoly& den, double tol) {
  num.trim(1e-13);
  den.trim(1e-13);
  if (num.is_zero() || den.degree() < 1) return;
  auto nr = poly_roots(num);
  auto dr = poly_roots(den);
  double scale = 1.0;
  for (cd r : nr) scale = std::max(scale, std::abs(r));
  for (cd r : dr) scale = std::max(scale, std::abs(r));
  std::vector<bool> used(dr.size(), false);
  std::vector<cd> keep_n;
  for (cd r : nr) {
    int best = -1;
    double bd = tol * scale;
    for (std::size_t j = 0; j < dr.size(); ++j) {
      if (used[j]) continue;
      double d = std::abs(r - dr[j]);
      if (d <= bd) {
        bd = d;
        best = static_cast<int>(j);
      }
    }
    if (best >= 0)
      used[best] = true;
    else
      keep_n.push_back(r);
  }
  if (keep_n.size() == nr.size()) return;  // nothing cancelled
  std::vector<cd> keep_d;
  for (std::size_t j = 0; j < dr.size(); ++j)
    if (!used[j]) keep_d.push_back(dr[j]);
  num = CPoly::from_roots(keep_n, num.lc());
  den = CPoly::from_roots(keep_d, den.lc());
}

}  // namespace

RationalFraction RationalFraction::exact(QPoly num, QPoly den) {
  if (den.is_zero()) throw precondition_error("zero denominator");
  QPoly g = QPoly::gcd(num, den);
  if (g.degree() > 0) {
    num = QPoly::divmod(num, g).first;
    den = QPoly::divmod(den, g).first;
  }
  Rational l = den.lc();
  std::vector<Rational> nc = num.coeffs(), dc = den.coeffs();
  for (auto& v : nc) v /= l;
  for (auto& v : dc) v /= l;
  RationalFraction f;
  f.exact_ = true;
  f.qnum_ = QPoly::from_coeffs(std::move(nc));
  f.qden_ = QPoly::from_coeffs(std::move(dc));
  return f;
}

RationalFraction RationalFraction::floating(CPoly num, CPoly den, double tol) {
  if (den.is_zero()) throw precondition_error("zero denominator");
  reduce_float(num, den, tol);
  cd l = den.lc();
  RationalFraction f;
  f.cnum_ = num.scaled(1.0 / l);
  f.cden_ = den.scaled(1.0 / l);
  return f;
}

CPoly RationalFraction::num() const {
  return exact_ ? qpoly_to_cpoly(qnum_) : cnum_;
}
CPoly RationalFraction::den() const {
  return exact_ ? qpoly_to_cpoly(qden_) : cden_;
}

int RationalFraction::degree() const {
  int dn = exact_ ? qnum_.degree() : cnum_.degree();
  int dd = exact_ ? qden_.degree() : cden_.degree();
  return std::max(dn, dd);
}

cd RationalFraction::eval(cd z) const { return num().eval(z) / den().eval(z); }

std::string RationalFraction::to_json() const {
  nlohmann::json j;
  if (exact_) {
    j["mode"] = "exact";
    auto enc = [](const QPoly& p) {
      nlohmann::json a = nlohmann::json::array();
      for (const auto& c : p.coeffs()) a.push_back(rational_string(c));
      return a;
    };
    j["num"] = enc(qnum_);
    j["den"] = enc(qden_);
  } else {
    j["mode"] = "float";
    auto enc = [](const CPoly& p) {
      nlohmann::json a = nlohmann::json::array();
      for (cd c : p.coeffs())
        a.push_back(nlohmann::json::array({c.real(), c.imag()}));
      return a;
    };
    j["num"] = enc(cnum_);
    j["den"] = enc(cden_);
  }
  return j.dump();
}

RationalFraction RationalFraction::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw precondition_error(std::string("bad fraction JSON: ") + e.what());
  }
  std::string mode = j.value("mode", "float");
  if (mode == "exact") {
    auto dec = [](const nlohmann::json& a) {
      std::vector<Rational> c;
      for (const auto& v : a) c.push_back(rational_from_string(v.get<std::string>()));
      return QPoly::from_coeffs(std::move(c));
    };
    return RationalFraction::exact(dec(j.at("num")), dec(j.at("den")));
  }
  auto dec = [](const nlohmann::json& a) {
    std::vector<cd> c;
    for (const auto& v : a) c.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    return CPoly(std::move(c));
  };
  return RationalFraction::floating(dec(j.at("num")), dec(j.at("den")));
}

RationalFraction RationalFraction::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw precondition_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

RationalFraction fraction_to_A(const RationalFraction& f) {
  if (f.degree() < 1) throw precondition_error("fraction must be nonconstant");
  if (f.is_exact()) {
    const QPoly &p = f.qnum(), &q = f.qden();
    QPoly num = p.derivative() * q - p * q.derivative();
    QPoly den = p * (p - q);
    if (den.is_zero())
      throw precondition_error("F(F-1) vanishes identically");
    return RationalFraction::exact(std::move(num), std::move(den));
  }
  CPoly p = f.num(), q = f.den();
  CPoly num = p.derivative() * q - p * q.derivative();
  CPoly den = p * (p - q);
  if (den.is_zero()) throw precondition_error("F(F-1) vanishes identically");
  return RationalFraction::floating(std::move(num), std::move(den), 1e-7);
}

std::vector<PoleResidue> partial_fractions(const RationalFraction& a,
                                           double tol) {
  CPoly num = a.num(), den = a.den();
  if (den.degree() < 1) return {};
  auto roots = poly_roots(den);
  double scale = 1.0;
  for (cd r : roots) scale = std::max(scale, std::abs(r));
  // Generous clustering: roots of multiplicity m scatter like eps^(1/m), so
  // the copies of one pole can sit ~1e-2 apart in double precision.  The
  // contour integral below is exact for whatever the contour encloses.
  auto clusters = cluster_points(roots, 2e-2 * scale);

  auto value = [&](cd z) { return num.eval(z) / den.eval(z); };
  std::vector<PoleResidue> out;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    cd p = clusters[i].first;
    double radius = 0.25 * scale;
    for (std::size_t j = 0; j < clusters.size(); ++j)
      if (j != i)
        radius = std::min(radius, 0.35 * std::abs(p - clusters[j].first));
    radius = std::max(radius, 1e-7);
    // Laurent coefficients c_{-1} and c_{-2} by trapezoid quadrature.
    const int M = 128;
    cd c1 = 0.0, c2 = 0.0;
    for (int k = 0; k < M; ++k) {
      double t = 2.0 * M_PI * k / M;
      cd w = std::polar(radius, t);
      cd v = value(p + w);
      c1 += v * w;
      c2 += v * w * w;
    }
    c1 /= double(M);
    c2 /= double(M);
    if (std::abs(c2) > tol * std::max(1.0, std::abs(c1)))
      throw precondition_error("fraction has a pole of order >= 2");
    if (std::abs(c1) <= tol) continue;  // removable point
    out.push_back({p, c1});
  }
  return out;
}

namespace {

// Monic group polynomial as a z-polynomial over the system unknowns.  A
// singleton's variable is the vertex coordinate itself (poly z - v); a
// larger group's variables are the non-leading coefficients, ascending.
ZMPoly group_poly(const VertexGroup& g, std::size_t nvars) {
  ZMPoly p;
  if (g.pinned) {
    // z - pinned
    p = {MPoly::constant(nvars, Rational(-*g.pinned)),
         MPoly::constant(nvars, 1)};
    return p;
  }
  if (g.size == 1) {
    p = {MPoly::var(nvars, g.vars[0]).scaled(-1), MPoly::constant(nvars, 1)};
    return p;
  }
  p.resize(g.size + 1, MPoly(nvars));
  for (std::uint32_t j = 0; j < g.size; ++j)
    p[j] = MPoly::var(nvars, g.vars[j]);
  p[g.size] = MPoly::constant(nvars, 1);
  return p;
}

}  // namespace

PolynomialSystem setup_system(const Passport& pass) {
  if (pass.genus != 0)
    throw precondition_error("only genus-0 systems are supported");
  const std::uint64_t n = std::accumulate(pass.black.begin(), pass.black.end(),
                                          std::uint64_t(0));
  auto total = [](const CycleType& t) {
    return std::accumulate(t.begin(), t.end(), std::uint64_t(0));
  };
  if (total(pass.white) != n || total(pass.faces) != n)
    throw precondition_error("passport weights disagree");
  if (pass.black.size() + pass.white.size() + pass.faces.size() != n + 2)
    throw precondition_error("passport is not planar");

  PolynomialSystem sys;
  sys.source = pass;

  // Grouping: for each colour, the vertex of maximal degree is pinned (0 for
  // black, 1 for white; the largest face goes to infinity), the rest are
  // grouped by equal degree.  Cycle types are sorted descending already.
  std::vector<std::string> names;
  std::vector<VertexGroup> groups;
  auto build_color = [&](char color, const CycleType& ct, bool pin_first,
                         int pin_value) {
    std::size_t start = 0;
    std::uint32_t vertex_index = 0;
    if (pin_first && !ct.empty()) {
      VertexGroup g;
      g.color = color;
      g.vertex_degree = ct[0];
      g.size = 1;
      g.pinned = pin_value;
      groups.push_back(g);
      start = 1;
      vertex_index = 1;
    }
    std::size_t i = start;
    while (i < ct.size()) {
      std::size_t j = i;
      while (j < ct.size() && ct[j] == ct[i]) ++j;
      VertexGroup g;
      g.color = color;
      g.vertex_degree = ct[i];
      g.size = static_cast<std::uint32_t>(j - i);
      if (g.size == 1) {
        names.push_back(std::string(1, color) + std::to_string(vertex_index));
        g.vars = {static_cast<std::uint32_t>(names.size() - 1)};
      } else {
        for (std::uint32_t k = 0; k < g.size; ++k) {
          names.push_back(std::string(1, color) + "g" +
                          std::to_string(vertex_index) + "_" +
                          std::to_string(k));
          g.vars.push_back(static_cast<std::uint32_t>(names.size() - 1));
        }
      }
      vertex_index += g.size;
      groups.push_back(std::move(g));
      i = j;
    }
  };
  build_color('b', pass.black, true, 0);
  build_color('w', pass.white, true, 1);
  // Faces: largest at infinity (dropped), the rest are single unknowns.
  sys.infinity_degree = pass.faces.empty() ? 1 : pass.faces[0];
  CycleType finite_faces(pass.faces.begin() + (pass.faces.empty() ? 0 : 1),
                         pass.faces.end());
  std::uint32_t face_index = 1;
  for (auto deg : finite_faces) {
    VertexGroup g;
    g.color = 'f';
    g.vertex_degree = deg;
    g.size = 1;
    names.push_back("f" + std::to_string(face_index++));
    g.vars = {static_cast<std::uint32_t>(names.size() - 1)};
    groups.push_back(std::move(g));
  }
  names.push_back("lambda");
  sys.lambda_var = static_cast<std::uint32_t>(names.size() - 1);
  names.push_back("eta");
  sys.eta_var = static_cast<std::uint32_t>(names.size() - 1);
  const std::size_t nv = names.size();
  sys.var_names = names;
  sys.groups = groups;

  // Group polynomials and radical products.
  std::vector<ZMPoly> polys;
  for (const auto& g : groups) polys.push_back(group_poly(g, nv));
  auto product_over = [&](char color, int skip) {
    ZMPoly acc = {MPoly::constant(nv, 1)};
    for (std::size_t i = 0; i < groups.size(); ++i)
      if (groups[i].color == color && static_cast<int>(i) != skip)
        acc = zmp_mul(acc, polys[i]);
    return acc;
  };
  ZMPoly black_rad = product_over('b', -1);
  ZMPoly white_rad = product_over('w', -1);

  // Cleared identity: lambda * prod_faces (z-f)^(r-1)
  //   = sum_w m_g Wg' (W~/Wg) B~  -  sum_b n_g Bg' (B~/Bg) W~.
  ZMPoly lhs = {MPoly::var(nv, sys.lambda_var)};
  for (std::size_t i = 0; i < groups.size(); ++i)
    if (groups[i].color == 'f' && groups[i].vertex_degree > 1)
      lhs = zmp_mul(lhs, zmp_pow(polys[i], groups[i].vertex_degree - 1));
  ZMPoly rhs = {};
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto& g = groups[i];
    if (g.color == 'f') continue;
    ZMPoly term = zmp_mul(zmp_derivative(polys[i]),
                          product_over(g.color, static_cast<int>(i)));
    term = zmp_mul(term, g.color == 'w' ? black_rad : white_rad);
    MPoly scale = MPoly::constant(
        nv, g.color == 'w' ? Rational(g.vertex_degree) : -Rational(g.vertex_degree));
    term = zmp_scale(term, scale);
    rhs = zmp_add(rhs, term);
  }
  ZMPoly diff = zmp_sub(lhs, rhs);
  for (const auto& coeff : diff)
    if (!coeff.is_zero()) sys.equations.push_back(coeff);

  // Pole conditions: prod W(f)^m = prod B(f)^n at every finite face.
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].color != 'f') continue;
    std::size_t fv = groups[i].vars[0];
    MPoly lhsf = MPoly::constant(nv, 1), rhsf = MPoly::constant(nv, 1);
    for (std::size_t jdx = 0; jdx < groups.size(); ++jdx) {
      if (groups[jdx].color == 'f') continue;
      MPoly at_f = zmp_eval_at_var(polys[jdx], fv, nv);
      if (groups[jdx].color == 'w')
        lhsf = lhsf * at_f.pow(groups[jdx].vertex_degree);
      else
        rhsf = rhsf * at_f.pow(groups[jdx].vertex_degree);
    }
    sys.equations.push_back(lhsf - rhsf);
  }

  // Distinctness: eta * prod resultants = 1.  Within-group discriminant-like
  // factors res(P, P') and pairwise res(P, Q) share the zero locus with the
  // product of vertex differences.
  MPoly D = MPoly::constant(nv, 1);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].size >= 2)
      D = D * resultant_z(polys[i], zmp_derivative(polys[i]), nv);
    for (std::size_t j = i + 1; j < groups.size(); ++j)
      D = D * resultant_z(polys[i], polys[j], nv);
  }
  sys.equations.push_back(MPoly::var(nv, sys.eta_var) * D -
                          MPoly::constant(nv, 1));
  sys.eta_equation = sys.equations.size() - 1;
  return sys;
}


namespace {

// Best rational with denominator <= max_den (continued fractions); nullopt
// when nothing within tol.
std::optional<Rational> snap_value(double x, long max_den, double tol) {
  double a = x;
  long long p0 = 1, q0 = 0;
  long long p1 = static_cast<long long>(std::floor(a)), q1 = 1;
  double frac = a - std::floor(a);
  for (int it = 0; it < 64; ++it) {
    if (q1 > max_den) break;
    if (std::abs(x - double(p1) / double(q1)) <= tol)
      return Rational(boost::multiprecision::cpp_int(p1),
                      boost::multiprecision::cpp_int(q1));
    if (frac < 1e-15) break;
    a = 1.0 / frac;
    long long ai = static_cast<long long>(std::floor(a));
    frac = a - std::floor(a);
    long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return std::nullopt;
}

std::optional<QPoly> snap_poly(const CPoly& p, long max_den) {
  std::vector<Rational> out;
  double scale = 1.0;
  for (cd c : p.coeffs()) scale = std::max(scale, std::abs(c));
  for (cd c : p.coeffs()) {
    if (std::abs(c.imag()) > 1e-8 * scale) return std::nullopt;
    auto r = snap_value(c.real(), max_den, 1e-8 * scale);
    if (!r) return std::nullopt;
    out.push_back(*r);
  }
  return QPoly::from_coeffs(std::move(out));
}

// Multiplicity structure of the roots of an exact polynomial, by square-free
// decomposition (Yun): one entry per distinct root, its multiplicity.
CycleType multiplicity_structure(const QPoly& p) {
  CycleType out;
  if (p.degree() <= 0) return out;
  QPoly c = QPoly::gcd(p, p.derivative());
  QPoly w = QPoly::divmod(p, c).first;
  std::uint32_t i = 1;
  while (w.degree() > 0) {
    QPoly y = QPoly::gcd(w, c);
    QPoly z = QPoly::divmod(w, y).first;  // roots of multiplicity exactly i
    for (int k = 0; k < z.degree(); ++k) out.push_back(i);
    c = QPoly::divmod(c, y).first;
    w = std::move(y);
    ++i;
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

Passport exact_passport(const RationalFraction& f) {
  if (!f.is_exact()) throw precondition_error("exact fraction required");
  const QPoly &p = f.qnum(), &q = f.qden();
  Passport out;
  out.black = multiplicity_structure(p);
  out.white = multiplicity_structure(p - q);
  out.faces = multiplicity_structure(q);
  int n = f.degree();
  std::uint32_t at_inf = n - std::max(q.degree(), 0);
  if (at_inf > 0) out.faces.push_back(at_inf);
  std::sort(out.faces.begin(), out.faces.end(), std::greater<>());
  long chi = long(out.black.size() + out.white.size() + out.faces.size()) - n;
  out.genus = int((2 - chi) / 2);
  return out;
}

std::optional<RationalFraction> snap_to_exact(const RationalFraction& f,
                                              const Passport& want,
                                              long max_den) {
  if (f.is_exact()) return f;
  auto num = snap_poly(f.num(), max_den);
  auto den = snap_poly(f.den(), max_den);
  if (!num || !den || den->is_zero()) return std::nullopt;
  RationalFraction exact = RationalFraction::exact(*num, *den);
  if (exact.degree() != f.degree()) return std::nullopt;
  Passport got = exact_passport(exact);
  if (got != want) return std::nullopt;
  return exact;
}

std::string PolynomialSystem::to_json() const {
  nlohmann::json j;
  j["passport"] = {{"black", source.black},
                   {"white", source.white},
                   {"faces", source.faces},
                   {"genus", source.genus}};
  j["infinity_degree"] = infinity_degree;
  j["variables"] = var_names;
  auto groups_json = nlohmann::json::array();
  for (const auto& g : groups) {
    nlohmann::json gj;
    gj["color"] = std::string(1, g.color);
    gj["vertex_degree"] = g.vertex_degree;
    gj["size"] = g.size;
    if (g.pinned) gj["pinned"] = *g.pinned;
    std::vector<std::string> vn;
    for (auto v : g.vars) vn.push_back(var_names[v]);
    gj["vars"] = vn;
    groups_json.push_back(std::move(gj));
  }
  j["groups"] = std::move(groups_json);
  auto eq = nlohmann::json::array();
  for (const auto& e : equations) eq.push_back(e.to_string(var_names));
  j["equations"] = std::move(eq);
  return j.dump();
}

}  // namespace dessins
