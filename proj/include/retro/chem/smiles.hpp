#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "retro/chem/molgraph.hpp"

namespace retro::chem {

class SmilesError : public std::runtime_error {
 public:
  SmilesError(std::size_t offset, const std::string& what)
      : std::runtime_error(what + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Parses the documented SMILES subset:
//   - organic-subset atoms B C N O P S F Cl Br I and aromatic b c n o p s
//   - bracket atoms [<symbol> <@|@@>? <H count>? <charge>?]
//   - ring closures 1-9 and %nn, branches, bond symbols - = # : / \
//   - stereo markers are recorded as opaque annotations
// Not supported (rejected with a SmilesError carrying the byte offset):
// isotopes, wildcard atoms, dot-separated components, reaction arrows.
MolGraph parse_smiles(std::string_view text);

}  // namespace retro::chem
