#pragma once

#include <optional>
#include <string_view>

namespace retro::chem {

bool is_known_element(std::string_view symbol);

// B C N O P S F Cl Br I: writable without brackets.
bool is_organic_subset(std::string_view symbol);

// Elements that may appear lowercase (aromatic): b c n o p s se as.
bool can_be_aromatic(std::string_view symbol);

// Standard atomic weight; nullopt for symbols without a stable standard
// value in the embedded table.
std::optional<double> atomic_weight(std::string_view symbol);

// Default valence list used for the implicit-hydrogen estimate. Returns a
// pointer to a static ascending list and writes its length to *count;
// nullptr (count 0) for elements outside the organic subset.
const int* default_valences(std::string_view symbol, int* count);

}  // namespace retro::chem
