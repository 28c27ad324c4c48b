#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dessins/cpoly.hpp"
#include "dessins/dessin.hpp"
#include "dessins/mpoly.hpp"
#include "dessins/parallel.hpp"

namespace dessins {

// Rational fraction P/Q on the sphere, with exact rational or complex float
// coefficients.  Normalized: the denominator is monic (exact mode reduces by
// the gcd; float mode strips trailing noise and cancels matching roots).
class RationalFraction {
public:
  static RationalFraction exact(QPoly num, QPoly den);
  static RationalFraction floating(CPoly num, CPoly den, double tol = 1e-9);

  bool is_exact() const { return exact_; }
  const QPoly& qnum() const { return qnum_; }
  const QPoly& qden() const { return qden_; }
  // Float views (exact coefficients converted on demand).
  CPoly num() const;
  CPoly den() const;

  int degree() const;  // degree as a map P^1 -> P^1
  cd eval(cd z) const;

  std::string to_json() const;
  static RationalFraction from_json(const std::string& text);
  static RationalFraction from_file(const std::string& path);

private:
  bool exact_ = false;
  QPoly qnum_, qden_;
  CPoly cnum_, cden_;
};

// A = F' / (F(F-1)): simple poles at the black and white vertices with the
// vertex degrees as (signed) residues.
RationalFraction fraction_to_A(const RationalFraction& f);

struct PoleResidue {
  cd pole;
  cd residue;
};
// Pole/residue list of a fraction with only simple poles (contour
// quadrature around clustered denominator roots; a higher-order Laurent
// coefficient above tol is an error).
std::vector<PoleResidue> partial_fractions(const RationalFraction& a,
                                           double tol = 1e-6);

// One same-colour same-degree block of vertices, encoded by the monic
// polynomial with those vertices as roots: unknowns are its non-leading
// coefficients (ascending).  Pinned singleton blocks have a fixed value and
// no unknowns.
struct VertexGroup {
  char color = 'b';  // 'b', 'w', 'f'
  std::uint32_t vertex_degree = 1;
  std::uint32_t size = 1;
  std::optional<int> pinned;            // 0 or 1
  std::vector<std::uint32_t> vars;      // indices into var_names
};

struct PolynomialSystem {
  Passport source;
  std::uint32_t infinity_degree = 1;    // face placed at infinity
  std::vector<std::string> var_names;   // groups' coefficients, lambda, eta
  std::vector<VertexGroup> groups;
  std::vector<MPoly> equations;         // cleared identity, face conditions,
                                        // then the eta distinctness equation
  std::uint32_t lambda_var = 0;
  std::uint32_t eta_var = 0;
  std::size_t eta_equation = 0;         // index of the eta equation
  std::string to_json() const;
};

// The genus-0 system for a passport: the cleared partial-fraction identity
// in grouped coordinates, one pole condition per finite face, pins (black
// vertex of maximal degree at 0, white at 1, largest face at infinity), and
// the eta distinctness equation via resultants of the group polynomials.
PolynomialSystem setup_system(const Passport& p);

struct BelyiCandidate {
  RationalFraction fraction = RationalFraction::floating(CPoly::x(), CPoly::constant(1.0));
  double residual = 0.0;
  double separation = 0.0;
  std::vector<cd> solution;             // values of the non-eta variables
  std::vector<std::string> var_names;
  std::vector<cd> vertices;             // all vertex positions (ungrouped)
};

struct SolveOptions {
  double tol = 1e-10;        // max equation residual accepted
  double separation = 1e-6;  // distinctness and deduplication threshold
  int starts = 0;            // 0: auto from the unknown count
  std::uint64_t seed = 0;
  int max_iter = 300;
  ExecPolicy exec{};
};

// Multistart damped Gauss-Newton over the float equations; deduplicated,
// separation-filtered candidates sorted by canonical coefficient tuples.
std::vector<BelyiCandidate> solve_system(const PolynomialSystem& sys,
                                         const SolveOptions& opts = {});

// Shabat polynomial of a planar tree via the division-remainder equations
// F(F-1) = P F'; candidates are screened by monodromy against d, so the
// returned fraction verifies.
BelyiCandidate tree_shabat(const Dessin& d, const SolveOptions& opts = {});

// Snap a float fraction to exact rational coefficients via continued
// fractions (denominator bound max_den) and re-verify its passport exactly
// through square-free decomposition; nullopt when any coefficient refuses to
// snap or the exact passport disagrees.
std::optional<RationalFraction> snap_to_exact(const RationalFraction& f,
                                              const Passport& want,
                                              long max_den = 1000000);

// Exact passport of an exact fraction: black/white degrees from the
// square-free structure of P and P - Q, faces from Q plus the pole at
// infinity.
Passport exact_passport(const RationalFraction& f);

struct MonodromyOptions {
  int init_steps = 64;
  double min_step = 1.0 / double(1u << 20);  // fraction of the loop
  double margin = 10.0;                      // fiber match safety factor
  double base_point = 0.5;
  double tol = 1e-10;
};

struct MonodromyResult {
  Perm sigma, alpha;
  std::vector<cd> base_fiber;
  double base_point = 0.5;
};

// Lift the loops around 0 and 1 based at 1/2 through F and read off the two
// fiber permutations.
MonodromyResult monodromy(const RationalFraction& f,
                          const MonodromyOptions& opts = {});

struct VerificationResult {
  bool ok = false;
  std::optional<Perm> witness;
  Perm mono_sigma, mono_alpha;
};
VerificationResult verify(const Dessin& d, const RationalFraction& f,
                          const MonodromyOptions& opts = {});

struct PreimageGraph {
  std::vector<std::vector<cd>> dart_paths;  // polyline per dart
  std::vector<cd> black_vertices;
  std::vector<cd> white_vertices;
};
// Fibers over sample points of (0,1), tagged by dart through continuation
// from the base fiber.
PreimageGraph sample_preimage(const RationalFraction& f, int samples,
                              const MonodromyOptions& opts = {});
std::string preimage_svg(const PreimageGraph& g);

}  // namespace dessins
