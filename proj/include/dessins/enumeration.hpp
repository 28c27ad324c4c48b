#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dessins/dessin.hpp"
#include "dessins/parallel.hpp"
#include "dessins/regularity.hpp"

namespace dessins {

inline constexpr const char* kCodeVersion = "dessins 0.1.0";

// Every connected dessin with `degree` darts, one canonical representative
// per isomorphism class, sorted by image tables.
struct DessinCatalog {
  std::uint32_t degree = 0;
  std::vector<Dessin> entries;
  std::string provenance;
};

struct RegularCatalog {
  std::uint32_t max_order = 0;
  std::vector<RegularDessin> entries;  // ordered by (order, canonical dessin)
};

struct EnumerationOptions {
  std::uint32_t degree_cap = 7;
  std::uint32_t regular_order_cap = 8;
  ExecPolicy exec{};
  std::string cache_dir;  // empty: no disk cache
};

// All transitive (sigma, alpha) pairs in S_n up to simultaneous conjugacy:
// sigma runs over cycle-type representatives, alpha over all of S_n, and
// classes are merged by canonical form.
DessinCatalog enumerate_dessins(std::uint32_t n,
                                const EnumerationOptions& opts = {});

// The scan kernel behind enumerate_dessins, without cache handling.
std::vector<Dessin> enumerate_scan(std::uint32_t n, const ExecPolicy& exec);

// Regular dessins of degree (= group order) up to max_order: the catalog of
// finite groups with a distinguished generating pair.
RegularCatalog enumerate_regular(std::uint32_t max_order,
                                 const EnumerationOptions& opts = {});

std::map<Passport, std::uint64_t> count_by_passport(const DessinCatalog& c);

// Partitions of n with parts descending, in deterministic order.
std::vector<std::vector<std::uint32_t>> partitions(std::uint32_t n);
// The representative permutation of a cycle type: consecutive blocks.
Perm cycle_type_representative(std::uint32_t n,
                               const std::vector<std::uint32_t>& parts);

// Catalog JSON: {"degree": n, "provenance": ..., "entries": [...],
// "hash": hex}; the hash is FNV-1a over the serialized entries and makes the
// on-disk cache revalidatable.
std::string catalog_to_json(const DessinCatalog& c);
DessinCatalog catalog_from_json(const std::string& text);
std::uint64_t catalog_content_hash(const DessinCatalog& c);

// Cache root resolution: explicit dir, else $DESSINS_CACHE, else
// $XDG_CACHE_HOME/dessins, else $HOME/.cache/dessins, else ./.dessins-cache.
std::string default_cache_dir();

}  // namespace dessins
