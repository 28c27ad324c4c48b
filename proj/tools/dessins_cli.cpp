// Command-line surface over the dessins library: structure and invariants,
// isomorphism, regularity, enumeration, the tower groups with their outer
// automorphisms, and the genus-0 Belyi solver.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dessins/belyi.hpp"
#include "dessins/dessin_io.hpp"
#include "dessins/enumeration.hpp"
#include "dessins/gt.hpp"
#include "dessins/regularity.hpp"
#include "json.hpp"

using namespace dessins;
using nlohmann::json;

namespace {

struct GlobalOpts {
  std::string format = "text";
  int threads = 0;
  std::uint64_t seed = 0;
  std::uint64_t cap = kDefaultElementCap;
  std::uint32_t degree_cap = 7;
  double tol = 1e-10;
  bool no_cache = false;
  bool force = false;  // opt into tower level 5
};

GlobalOpts G;

ExecPolicy exec_policy() {
  ExecPolicy p;
  p.threads = G.threads;
  return p;
}

EnumerationOptions enum_options() {
  EnumerationOptions o;
  o.exec = exec_policy();
  o.degree_cap = std::max<std::uint32_t>(G.degree_cap, 7);
  if (!G.no_cache) o.cache_dir = default_cache_dir();
  return o;
}

void emit(const json& j, const std::string& text) {
  if (G.format == "json")
    std::cout << j.dump() << "\n";
  else
    std::cout << text;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw precondition_error("cannot write " + path);
  out << content;
}

json passport_json(const Passport& p) {
  return json{{"black", p.black},
              {"white", p.white},
              {"faces", p.faces},
              {"genus", p.genus}};
}

// Words over the generators: whitespace-separated tokens s, a, s^-1, a^3, ...
std::vector<std::pair<int, long long>> parse_word(const std::string& text) {
  std::vector<std::pair<int, long long>> out;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    int letter;
    if (tok[0] == 's')
      letter = 0;
    else if (tok[0] == 'a')
      letter = 1;
    else
      throw precondition_error("word letters are s and a: got " + tok);
    long long e = 1;
    if (tok.size() > 1) {
      if (tok[1] != '^') throw precondition_error("bad word token " + tok);
      e = std::stoll(tok.substr(2));
    }
    out.emplace_back(letter, e);
  }
  return out;
}

std::uint32_t eval_word_in_group(const ConcreteGroup& g,
                                 const std::string& text) {
  std::uint32_t acc = g.identity();
  for (auto [letter, e] : parse_word(text)) {
    std::uint32_t base = letter == 0 ? g.sigma() : g.alpha();
    if (e < 0) {
      base = g.inverse(base);
      e = -e;
    }
    acc = g.mult(acc, g.power(base, static_cast<std::uint64_t>(e)));
  }
  return acc;
}

Passport parse_passport(const std::string& text) {
  // "4,2,1 / 2,2,1,1,1 / 7"
  std::vector<CycleType> parts;
  std::string cur;
  std::istringstream is(text);
  std::string piece;
  while (std::getline(is, piece, '/')) {
    CycleType t;
    std::istringstream ps(piece);
    std::string num;
    while (std::getline(ps, num, ',')) {
      if (num.find_first_not_of(" \t") == std::string::npos) continue;
      t.push_back(static_cast<std::uint32_t>(std::stoul(num)));
    }
    std::sort(t.begin(), t.end(), std::greater<>());
    parts.push_back(std::move(t));
  }
  if (parts.size() != 3)
    throw precondition_error("passport must be black/white/faces");
  Passport p;
  p.black = parts[0];
  p.white = parts[1];
  p.faces = parts[2];
  auto sum = [](const CycleType& t) {
    std::uint64_t s = 0;
    for (auto v : t) s += v;
    return s;
  };
  std::uint64_t n = sum(p.black);
  if (sum(p.white) != n || sum(p.faces) != n)
    throw precondition_error("passport weights disagree");
  long chi = static_cast<long>(p.black.size() + p.white.size() +
                               p.faces.size()) - static_cast<long>(n);
  p.genus = static_cast<int>((2 - chi) / 2);
  return p;
}

json candidate_json(const BelyiCandidate& c) {
  json sol = json::object();
  for (std::size_t i = 0; i < c.solution.size(); ++i)
    sol[c.var_names[i]] = {c.solution[i].real(), c.solution[i].imag()};
  return json{{"residual", c.residual},
              {"separation", c.separation},
              {"solution", sol},
              {"fraction", json::parse(c.fraction.to_json())}};
}

void cmd_info(const std::string& file) {
  Dessin d = dessin_from_file(file);
  bool conn = is_connected(d);
  json j;
  j["n"] = d.darts();
  j["connected"] = conn;
  j["euler_characteristic"] = euler_characteristic(d);
  std::ostringstream text;
  text << "darts: " << d.darts() << "\n";
  text << "connected: " << (conn ? "true" : "false") << "\n";
  text << "chi: " << euler_characteristic(d) << "\n";
  if (conn) {
    Passport p = passport(d);
    auto group = cartographic_group(d);
    auto aut = automorphism_group(d);
    bool reg = is_regular(d);
    j["genus"] = p.genus;
    j["passport"] = passport_json(p);
    j["group_order"] = group.order();
    j["aut_order"] = aut.order();
    j["regular"] = reg;
    text << "genus: " << p.genus << "\n";
    text << "passport: " << passport_to_string(p) << "\n";
    text << "group order: " << group.order() << "\n";
    text << "aut order: " << aut.order() << "\n";
    text << "regular: " << (reg ? "true" : "false") << "\n";
  }
  emit(j, text.str());
}

void cmd_iso(const std::string& fa, const std::string& fb) {
  Dessin a = dessin_from_file(fa), b = dessin_from_file(fb);
  auto w = is_isomorphic(a, b);
  json j;
  j["isomorphic"] = w.has_value();
  if (w) j["witness"] = cycle_string(*w);
  emit(j, w ? "isomorphic: true\nwitness: " + cycle_string(*w) + "\n"
            : "isomorphic: false\n");
  if (!w) std::exit(3);
}

void cmd_aut(const std::string& file) {
  Dessin d = dessin_from_file(file);
  auto aut = automorphism_group(d);
  json j;
  j["order"] = aut.order();
  auto gens = json::array();
  std::ostringstream text;
  text << "aut order: " << aut.order() << "\n";
  for (const auto& g : aut.generators()) {
    gens.push_back(cycle_string(g));
    text << cycle_string(g) << "\n";
  }
  j["generators"] = gens;
  emit(j, text.str());
}

void cmd_transform(const std::string& file, const std::string& out, bool dualize) {
  Dessin d = dessin_from_file(file);
  Dessin r = dualize ? dual(d) : swap_colors(d);
  write_output(out, G.format == "text" ? dessin_to_text(r) : dessin_to_json(r));
}

void cmd_closure(const std::string& file, const std::string& out) {
  Dessin d = dessin_from_file(file);
  RegularClosure rc = regular_closure(d, G.cap);
  json j;
  j["dessin"] = json::parse(dessin_to_json(rc.regular.dessin));
  json cover = json::array();
  for (auto dart : rc.covering) cover.push_back(dart + 1);
  j["covering"] = cover;
  j["group_order"] = rc.regular.group.order();
  write_output(out, j.dump() + "\n");
}

void cmd_quotient(const std::string& file,
                  const std::vector<std::string>& words,
                  const std::string& out) {
  Dessin d = dessin_from_file(file);
  if (!is_regular(d))
    throw precondition_error("quotient input must be a regular dessin");
  ConcreteGroup g = ConcreteGroup::from_permutations(d.sigma(), d.alpha(), G.cap);
  RegularDessin rd = regular_dessin_from_group(std::move(g));
  std::vector<std::uint32_t> gens;
  for (const auto& w : words) gens.push_back(eval_word_in_group(rd.group, w));
  Dessin q = quotient(rd, gens);
  write_output(out, G.format == "text" ? dessin_to_text(q) : dessin_to_json(q));
}

void cmd_enumerate(std::uint32_t n, const std::string& catalog_out) {
  auto opts = enum_options();
  DessinCatalog c = enumerate_dessins(n, opts);
  if (!catalog_out.empty()) {
    write_output(catalog_out, catalog_to_json(c) + "\n");
    return;
  }
  for (const auto& d : c.entries) std::cout << dessin_to_json(d) << "\n";
}

void cmd_regular_catalog(std::uint32_t n) {
  auto opts = enum_options();
  RegularCatalog c = enumerate_regular(n, opts);
  for (const auto& e : c.entries) {
    json j = json::parse(dessin_to_json(e.dessin));
    j["order"] = e.group.order();
    std::cout << j.dump() << "\n";
  }
}

GtOptions gt_options() {
  GtOptions o;
  o.allow_level5 = G.force;
  o.element_cap = G.cap;
  o.exec = exec_policy();
  return o;
}

ConcreteGroup build_level_group(int level) {
  if (level >= 5) {
    auto est = estimate_hn_cost(level, gt_options());
    std::cerr << "note: level " << level << " uses " << est.components
              << " components, |U| ~ 10^" << est.log10_product_order << "\n";
  }
  return build_hn(level, gt_options());
}

void cmd_hn(int level) {
  ConcreteGroup h = build_level_group(level);
  json j;
  j["level"] = level;
  j["order"] = h.order();
  j["sigma_order"] = h.element_order(h.sigma());
  j["alpha_order"] = h.element_order(h.alpha());
  j["abelian"] = h.is_abelian();
  j["derived_order"] = h.derived_subgroup().size();
  std::ostringstream text;
  text << "level: " << level << "\norder: " << h.order()
       << "\nsigma order: " << h.element_order(h.sigma())
       << "\nalpha order: " << h.element_order(h.alpha())
       << "\nabelian: " << (h.is_abelian() ? "true" : "false")
       << "\nderived subgroup order: " << h.derived_subgroup().size() << "\n";
  emit(j, text.str());
}

void cmd_gt(int level) {
  ConcreteGroup h = build_level_group(level);
  auto auts = generating_pairs(h, exec_policy());
  auto oc = out_classes(h, auts);
  auto gts = gt_filter(h, oc, exec_policy());
  json j;
  j["level"] = level;
  j["order"] = h.order();
  j["aut_order"] = auts.size();
  j["out_order"] = oc.count();
  j["gt_size"] = gts.size();
  auto wit = json::array();
  std::ostringstream text;
  text << "level: " << level << "\n|H|: " << h.order()
       << "\n|Aut|: " << auts.size() << "\n|Out|: " << oc.count()
       << "\n|GT|: " << gts.size() << "\n";
  for (const auto& e : gts) {
    json w;
    w["k"] = e.k;
    w["f"] = word_string(e.f_word);
    w["k_character"] = k_character(e, level);
    wit.push_back(w);
    text << "  k=" << e.k << " f=\"" << word_string(e.f_word)
         << "\" k mod n=" << k_character(e, level) << "\n";
  }
  j["witnesses"] = wit;
  emit(j, text.str());
}

void cmd_act(int level, const std::string& autspec, const std::string& file,
             const std::string& out) {
  Dessin d = dessin_from_file(file);
  ConcreteGroup h = build_level_group(level);
  GroupAutomorphism aut;
  if (autspec == "theta") {
    aut = theta(h);
  } else if (autspec == "delta") {
    aut = delta(h);
  } else {
    auto semi = autspec.find(';');
    if (semi == std::string::npos ||
        autspec.rfind("s:", 0) != 0 ||
        autspec.compare(semi + 1, 2, "a:") != 0)
      throw precondition_error(
          "automorphism must be theta, delta, or s:<word>;a:<word>");
    aut.sigma_image = eval_word_in_group(h, autspec.substr(2, semi - 2));
    aut.alpha_image = eval_word_in_group(h, autspec.substr(semi + 3));
    automorphism_map(h, aut);  // validates
  }
  Dessin r = act_on_dessin(h, aut, d);
  write_output(out, G.format == "text" ? dessin_to_text(r) : dessin_to_json(r));
}

SolveOptions solve_options() {
  SolveOptions o;
  o.seed = G.seed;
  o.tol = G.tol;
  o.exec = exec_policy();
  return o;
}

void cmd_belyi_solve(const std::string& passport_text, const std::string& file,
                     bool emit_system, int starts, bool snap,
                     const std::string& out) {
  Passport p;
  if (!passport_text.empty()) {
    p = parse_passport(passport_text);
  } else if (!file.empty()) {
    p = passport(dessin_from_file(file));
  } else {
    throw precondition_error("belyi solve needs --passport or a dessin file");
  }
  PolynomialSystem sys = setup_system(p);
  if (emit_system) {
    write_output(out, sys.to_json() + "\n");
    return;
  }
  auto opts = solve_options();
  opts.starts = starts;
  auto cands = solve_system(sys, opts);
  json j;
  j["seed"] = G.seed;
  j["passport"] = passport_json(p);
  j["count"] = cands.size();
  auto arr = json::array();
  for (const auto& c : cands) {
    json cj = candidate_json(c);
    if (snap) {
      auto exact = snap_to_exact(c.fraction, p);
      if (exact) cj["exact_fraction"] = json::parse(exact->to_json());
    }
    arr.push_back(std::move(cj));
  }
  j["candidates"] = arr;
  write_output(out, j.dump() + "\n");
}

void cmd_belyi_tree(const std::string& file, int starts, bool snap,
                    const std::string& out) {
  Dessin d = dessin_from_file(file);
  auto opts = solve_options();
  opts.starts = starts;
  BelyiCandidate c = tree_shabat(d, opts);
  json j;
  j["seed"] = G.seed;
  j["candidate"] = candidate_json(c);
  if (snap) {
    auto exact = snap_to_exact(c.fraction, passport(d));
    if (exact) j["candidate"]["exact_fraction"] = json::parse(exact->to_json());
  }
  write_output(out, j.dump() + "\n");
}

void cmd_belyi_monodromy(const std::string& file) {
  RationalFraction f = RationalFraction::from_file(file);
  MonodromyResult m = monodromy(f);
  json j;
  j["degree"] = f.degree();
  j["base_point"] = m.base_point;
  j["sigma"] = cycle_string(m.sigma);
  j["alpha"] = cycle_string(m.alpha);
  auto fib = json::array();
  for (cd z : m.base_fiber) fib.push_back({z.real(), z.imag()});
  j["fiber"] = fib;
  std::ostringstream text;
  text << "sigma: " << cycle_string(m.sigma) << "\nalpha: "
       << cycle_string(m.alpha) << "\n";
  emit(j, text.str());
}

void cmd_belyi_verify(const std::string& dfile, const std::string& ffile) {
  Dessin d = dessin_from_file(dfile);
  RationalFraction f = RationalFraction::from_file(ffile);
  auto vr = verify(d, f);
  json j;
  j["verified"] = vr.ok;
  j["sigma"] = cycle_string(vr.mono_sigma);
  j["alpha"] = cycle_string(vr.mono_alpha);
  if (vr.witness) j["witness"] = cycle_string(*vr.witness);
  emit(j, std::string("verified: ") + (vr.ok ? "true" : "false") + "\n");
  if (!vr.ok) std::exit(3);
}

void cmd_belyi_svg(const std::string& file, int samples, const std::string& out) {
  RationalFraction f = RationalFraction::from_file(file);
  PreimageGraph g = sample_preimage(f, samples);
  write_output(out, preimage_svg(g));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dessins: permutation models, invariants, enumeration, tower "
               "automorphisms and genus-0 Belyi maps"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", G.format, "output format: text|json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--threads", G.threads, "worker thread cap (0 = auto)");
  app.add_option("--seed", G.seed, "random seed (recorded in outputs)");
  app.add_option("--cap", G.cap, "element enumeration cap");
  app.add_option("--degree-cap", G.degree_cap, "dessin enumeration degree cap");
  app.add_option("--tol", G.tol, "solver residual tolerance");
  app.add_flag("--no-cache", G.no_cache, "disable the catalog disk cache");
  app.add_flag("--force", G.force, "allow tower level 5");

  std::string file_a, file_b, out_path, passport_text, word_spec;
  std::vector<std::string> gen_words;
  std::uint32_t n_arg = 1;
  int level = 2, starts = 0, samples = 120;

  auto* info = app.add_subcommand("info", "passport, genus, orders");
  info->add_option("dessin", file_a)->required();

  auto* iso = app.add_subcommand("iso", "isomorphism test with witness");
  iso->add_option("a", file_a)->required();
  iso->add_option("b", file_b)->required();

  auto* aut = app.add_subcommand("aut", "automorphism group");
  aut->add_option("dessin", file_a)->required();

  auto* dualc = app.add_subcommand("dual", "black vertices <-> face centres");
  dualc->add_option("dessin", file_a)->required();
  dualc->add_option("-o,--out", out_path);

  auto* swapc = app.add_subcommand("swap", "exchange vertex colours");
  swapc->add_option("dessin", file_a)->required();
  swapc->add_option("-o,--out", out_path);

  auto* closure = app.add_subcommand("closure", "regular closure + covering");
  closure->add_option("dessin", file_a)->required();
  closure->add_option("-o,--out", out_path);

  auto* quot = app.add_subcommand("quotient", "coset dessin of a subgroup");
  quot->add_option("dessin", file_a)->required();
  quot->add_option("--gen", gen_words, "subgroup generator words (s/a tokens)");
  quot->add_option("-o,--out", out_path);

  auto* enumc = app.add_subcommand("enumerate", "connected dessins up to iso");
  enumc->add_option("n", n_arg)->required();
  enumc->add_option("--catalog", file_b, "write a catalog file instead");

  auto* regc = app.add_subcommand("regular-catalog", "regular dessins by order");
  regc->add_option("n", n_arg)->required();

  auto* hn = app.add_subcommand("hn", "the level group of the tower");
  hn->add_option("n", level)->required();

  auto* gt = app.add_subcommand("gt", "GT(n) inside Out(H_n)");
  gt->add_option("n", level)->required();

  auto* act = app.add_subcommand("act", "act on a dessin by an automorphism");
  act->add_option("--level", level)->required();
  act->add_option("--auto", word_spec, "theta | delta | s:<word>;a:<word>")
      ->required();
  act->add_option("dessin", file_a)->required();
  act->add_option("-o,--out", out_path);

  auto* belyi = app.add_subcommand("belyi", "genus-0 Belyi machinery");
  belyi->require_subcommand(1);
  auto* bsolve = belyi->add_subcommand("solve", "solve the vertex system");
  bool emit_system = false, snap = false;
  bsolve->add_option("dessin", file_a, "dessin file (passport source)");
  bsolve->add_option("--passport", passport_text, "black/white/faces");
  bsolve->add_flag("--emit-system", emit_system, "print the exact system");
  bsolve->add_flag("--snap", snap, "snap candidates to rationals when possible");
  bsolve->add_option("--starts", starts, "multistart budget (0 = auto)");
  bsolve->add_option("-o,--out", out_path);
  auto* btree = belyi->add_subcommand("tree", "Shabat polynomial of a tree");
  btree->add_option("dessin", file_a)->required();
  btree->add_option("--starts", starts);
  btree->add_flag("--snap", snap, "snap the candidate to rationals");
  btree->add_option("-o,--out", out_path);
  auto* bmono = belyi->add_subcommand("monodromy", "fiber permutations");
  bmono->add_option("fraction", file_a)->required();
  auto* bverify = belyi->add_subcommand("verify", "monodromy matches dessin");
  bverify->add_option("dessin", file_a)->required();
  bverify->add_option("fraction", file_b)->required();
  auto* bsvg = belyi->add_subcommand("svg", "draw the preimage of [0,1]");
  bsvg->add_option("fraction", file_a)->required();
  bsvg->add_option("--samples", samples);
  bsvg->add_option("-o,--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*info) cmd_info(file_a);
    if (*iso) cmd_iso(file_a, file_b);
    if (*aut) cmd_aut(file_a);
    if (*dualc) cmd_transform(file_a, out_path, true);
    if (*swapc) cmd_transform(file_a, out_path, false);
    if (*closure) cmd_closure(file_a, out_path);
    if (*quot) cmd_quotient(file_a, gen_words, out_path);
    if (*enumc) cmd_enumerate(n_arg, file_b);
    if (*regc) cmd_regular_catalog(n_arg);
    if (*hn) cmd_hn(level);
    if (*gt) cmd_gt(level);
    if (*act) cmd_act(level, word_spec, file_a, out_path);
    if (*bsolve)
      cmd_belyi_solve(passport_text, file_a, emit_system, starts, snap,
                      out_path);
    if (*btree) cmd_belyi_tree(file_a, starts, snap, out_path);
    if (*bmono) cmd_belyi_monodromy(file_a);
    if (*bverify) cmd_belyi_verify(file_a, file_b);
    if (*bsvg) cmd_belyi_svg(file_a, samples, out_path);
  } catch (const cap_exceeded& e) {
    std::cerr << json{{"error", {{"type", "cap"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << json{{"error",
                       {{"type", "precondition"}, {"message", e.what()}}}}
                     .dump()
              << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"type", "internal"}, {"message", e.what()}}}}
                     .dump()
              << "\n";
    return 1;
  }
  return 0;
}
