#include "dessins/dessin_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dessins {

namespace {

using nlohmann::json;

json cycles_to_json(const Perm& p) {
  auto cycles = p.cycles(false);
  for (auto& c : cycles) {
    auto it = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), it, c.end());
  }
  std::sort(cycles.begin(), cycles.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  json out = json::array();
  for (const auto& c : cycles) {
    json jc = json::array();
    for (auto x : c) jc.push_back(x + 1);
    out.push_back(jc);
  }
  return out;
}

Perm perm_from_json(const json& j, std::size_t n) {
  std::vector<std::vector<std::uint32_t>> cycles;
  if (!j.is_array()) throw precondition_error("cycles must be an array");
  for (const auto& jc : j) {
    if (!jc.is_array()) throw precondition_error("cycle must be an array");
    std::vector<std::uint32_t> c;
    for (const auto& v : jc) {
      std::int64_t x = v.get<std::int64_t>();
      if (x < 1 || x > static_cast<std::int64_t>(n))
        throw precondition_error("cycle point out of range (1-based)");
      c.push_back(static_cast<std::uint32_t>(x - 1));
    }
    if (c.size() > 1) cycles.push_back(std::move(c));
  }
  return Perm::from_cycles(n, cycles);
}

}  // namespace

std::string dessin_to_json(const Dessin& d) {
  json j;
  j["n"] = d.darts();
  j["sigma"] = cycles_to_json(d.sigma());
  j["alpha"] = cycles_to_json(d.alpha());
  return j.dump();
}

Dessin dessin_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw precondition_error(std::string("bad dessin JSON: ") + e.what());
  }
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw precondition_error("dessin JSON needs an integer field n");
  std::int64_t n = j["n"].get<std::int64_t>();
  if (n < 1) throw precondition_error("dart count must be at least 1");
  Perm sigma = perm_from_json(j.value("sigma", json::array()), n);
  Perm alpha = perm_from_json(j.value("alpha", json::array()), n);
  return Dessin(std::move(sigma), std::move(alpha));
}

std::string dessin_to_text(const Dessin& d) {
  std::ostringstream os;
  os << "n " << d.darts() << '\n'
     << cycle_string(d.sigma()) << '\n'
     << cycle_string(d.alpha()) << '\n';
  return os.str();
}

Dessin dessin_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string header, sline, aline;
  if (!std::getline(is, header))
    throw precondition_error("empty dessin text");
  std::istringstream hs(header);
  std::string tag;
  std::int64_t n = 0;
  hs >> tag >> n;
  if (tag != "n" || n < 1)
    throw precondition_error("dessin text must start with 'n <darts>'");
  if (!std::getline(is, sline) || !std::getline(is, aline))
    throw precondition_error("dessin text needs sigma and alpha lines");
  return Dessin(parse_cycles(sline, n), parse_cycles(aline, n));
}

Dessin dessin_from_string(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return dessin_from_json(text);
    break;
  }
  return dessin_from_text(text);
}

Dessin dessin_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw precondition_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return dessin_from_string(ss.str());
}

std::string passport_to_string(const Passport& p) {
  auto part = [](const CycleType& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) os << ',';
      os << t[i];
    }
    return os.str();
  };
  std::ostringstream os;
  os << part(p.black) << " / " << part(p.white) << " / " << part(p.faces)
     << " (genus " << p.genus << ")";
  return os.str();
}

}  // namespace dessins
