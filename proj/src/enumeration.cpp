#include "dessins/enumeration.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dessins/dessin_io.hpp"
#include "json.hpp"

namespace dessins {

namespace {

std::uint64_t factorial(std::uint32_t n) {
  std::uint64_t f = 1;
  for (std::uint32_t i = 2; i <= n; ++i) f *= i;
  return f;
}

// rank -> permutation of {0..n-1} in lexicographic order (Lehmer decode).
Perm nth_permutation(std::uint32_t n, std::uint64_t rank) {
  std::vector<std::uint32_t> pool(n), img(n);
  for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
  std::uint64_t f = factorial(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    f /= (n - i);
    std::uint64_t q = rank / f;
    rank %= f;
    img[i] = pool[q];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(q));
  }
  return Perm::from_images(std::move(img));
}

bool transitive_pair(const Perm& s, const Perm& a) {
  const std::size_t n = s.degree();
  std::vector<bool> seen(n, false);
  std::vector<std::uint32_t> stack = {0};
  seen[0] = true;
  std::size_t cnt = 1;
  while (!stack.empty()) {
    std::uint32_t x = stack.back();
    stack.pop_back();
    for (const Perm* p : {&s, &a}) {
      std::uint32_t y = (*p)[x];
      if (!seen[y]) {
        seen[y] = true;
        ++cnt;
        stack.push_back(y);
      }
    }
  }
  return cnt == n;
}

}  // namespace

std::vector<std::vector<std::uint32_t>> partitions(std::uint32_t n) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  // parts descending, largest first
  std::function<void(std::uint32_t, std::uint32_t)> rec =
      [&](std::uint32_t rest, std::uint32_t maxpart) {
        if (rest == 0) {
          out.push_back(cur);
          return;
        }
        for (std::uint32_t p = std::min(rest, maxpart); p >= 1; --p) {
          cur.push_back(p);
          rec(rest - p, p);
          cur.pop_back();
        }
      };
  rec(n, n);
  return out;
}

Perm cycle_type_representative(std::uint32_t n,
                               const std::vector<std::uint32_t>& parts) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::uint32_t next = 0;
  for (auto p : parts) {
    std::vector<std::uint32_t> c(p);
    for (std::uint32_t i = 0; i < p; ++i) c[i] = next + i;
    next += p;
    cycles.push_back(std::move(c));
  }
  if (next != n) throw precondition_error("partition does not sum to n");
  return Perm::from_cycles(n, cycles);
}

std::vector<Dessin> enumerate_scan(std::uint32_t n, const ExecPolicy& exec) {
  if (n == 0) throw precondition_error("degree must be at least 1");
  const auto parts = partitions(n);
  std::vector<Perm> reps;
  reps.reserve(parts.size());
  for (const auto& p : parts) reps.push_back(cycle_type_representative(n, p));
  const std::uint64_t nf = factorial(n);
  const std::size_t total = reps.size() * nf;

  using Pair = std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>;
  std::vector<std::vector<Pair>> found(kMaxChunks);
  run_chunks(total, exec, [&](std::size_t chunk, std::size_t b, std::size_t e) {
    auto& local = found[chunk];
    for (std::size_t idx = b; idx < e; ++idx) {
      const Perm& sigma = reps[idx / nf];
      Perm alpha = nth_permutation(n, idx % nf);
      if (!transitive_pair(sigma, alpha)) continue;
      Dessin c = canonical_form(Dessin(sigma, std::move(alpha)));
      local.emplace_back(c.sigma().images(), c.alpha().images());
    }
  });

  std::vector<Pair> all;
  for (auto& v : found) {
    all.insert(all.end(), std::make_move_iterator(v.begin()),
               std::make_move_iterator(v.end()));
    v.clear();
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  std::vector<Dessin> out;
  out.reserve(all.size());
  for (auto& p : all)
    out.emplace_back(Perm::from_images(std::move(p.first)),
                     Perm::from_images(std::move(p.second)));
  return out;
}

namespace {

std::string catalog_cache_path(const std::string& dir, std::uint32_t n) {
  return dir + "/catalog-n" + std::to_string(n) + ".json";
}

}  // namespace

DessinCatalog enumerate_dessins(std::uint32_t n, const EnumerationOptions& opts) {
  if (n == 0) throw precondition_error("degree must be at least 1");
  if (n > opts.degree_cap)
    throw cap_exceeded("enumeration degree " + std::to_string(n) +
                       " exceeds cap " + std::to_string(opts.degree_cap));
  if (!opts.cache_dir.empty()) {
    std::ifstream in(catalog_cache_path(opts.cache_dir, n));
    if (in) {
      std::stringstream ss;
      ss << in.rdbuf();
      try {
        DessinCatalog c = catalog_from_json(ss.str());
        if (c.degree == n) return c;  // hash validated during parse
      } catch (const error&) {
        // fall through and recompute; the cache is advisory
      }
    }
  }
  DessinCatalog c;
  c.degree = n;
  c.entries = enumerate_scan(n, opts.exec);
  c.provenance = std::string(kCodeVersion) + " scan n=" + std::to_string(n);
  if (!opts.cache_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(opts.cache_dir, ec);
    std::ofstream out(catalog_cache_path(opts.cache_dir, n));
    if (out) out << catalog_to_json(c);
  }
  return c;
}

RegularCatalog enumerate_regular(std::uint32_t max_order,
                                 const EnumerationOptions& opts) {
  if (max_order == 0) throw precondition_error("order bound must be positive");
  if (max_order > opts.regular_order_cap)
    throw cap_exceeded("regular catalog order " + std::to_string(max_order) +
                       " exceeds cap " + std::to_string(opts.regular_order_cap));
  RegularCatalog cat;
  cat.max_order = max_order;
  EnumerationOptions sub = opts;
  sub.degree_cap = std::max(opts.degree_cap, max_order);
  for (std::uint32_t k = 1; k <= max_order; ++k) {
    DessinCatalog dc = enumerate_dessins(k, sub);
    for (const auto& d : dc.entries) {
      if (!is_regular(d)) continue;
      ConcreteGroup g =
          ConcreteGroup::from_permutations(d.sigma(), d.alpha(), k + 1);
      cat.entries.push_back(RegularDessin{std::move(g), d});
    }
  }
  return cat;
}

std::map<Passport, std::uint64_t> count_by_passport(const DessinCatalog& c) {
  std::map<Passport, std::uint64_t> out;
  for (const auto& d : c.entries) ++out[passport(d)];
  return out;
}

std::uint64_t catalog_content_hash(const DessinCatalog& c) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ull;
    }
  };
  mix(std::to_string(c.degree));
  for (const auto& d : c.entries) mix(dessin_to_json(d));
  return h;
}

std::string catalog_to_json(const DessinCatalog& c) {
  nlohmann::json j;
  j["degree"] = c.degree;
  j["provenance"] = c.provenance;
  auto entries = nlohmann::json::array();
  for (const auto& d : c.entries)
    entries.push_back(nlohmann::json::parse(dessin_to_json(d)));
  j["entries"] = std::move(entries);
  std::ostringstream hex;
  hex << std::hex << catalog_content_hash(c);
  j["hash"] = hex.str();
  return j.dump();
}

DessinCatalog catalog_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw precondition_error(std::string("bad catalog JSON: ") + e.what());
  }
  DessinCatalog c;
  c.degree = j.at("degree").get<std::uint32_t>();
  c.provenance = j.value("provenance", "");
  for (const auto& je : j.at("entries"))
    c.entries.push_back(dessin_from_json(je.dump()));
  std::ostringstream hex;
  hex << std::hex << catalog_content_hash(c);
  if (j.contains("hash") && j["hash"].get<std::string>() != hex.str())
    throw precondition_error("catalog hash mismatch");
  return c;
}

std::string default_cache_dir() {
  if (const char* env = std::getenv("DESSINS_CACHE")) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"))
    return std::string(xdg) + "/dessins";
  if (const char* home = std::getenv("HOME"))
    return std::string(home) + "/.cache/dessins";
  return ".dessins-cache";
}

}  // namespace dessins
