#pragma once

#include <string>

#include "dessins/dessin.hpp"

namespace dessins {

// Dessin JSON: {"n": 7, "sigma": [[1,2,3,4],[5,6]], "alpha": [[2,5],[4,7]]}.
// Cycles are 1-based, each rotated so its least point comes first, sorted by
// least point; length-1 cycles are omitted on print and allowed on parse.
std::string dessin_to_json(const Dessin& d);
Dessin dessin_from_json(const std::string& text);

// Text form: a "n <darts>" header line, then one line of cycle notation for
// sigma and one for alpha.  The header carries the degree, which bare cycle
// notation loses for identity permutations.
std::string dessin_to_text(const Dessin& d);
Dessin dessin_from_text(const std::string& text);

// Reads either format, sniffing the leading character.
Dessin dessin_from_string(const std::string& text);
Dessin dessin_from_file(const std::string& path);

std::string passport_to_string(const Passport& p);

}  // namespace dessins
