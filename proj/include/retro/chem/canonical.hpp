#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "retro/chem/molgraph.hpp"

namespace retro::chem {

// Canonical SMILES of the subset grammar. Deterministic and invariant
// under any permutation of the atom order:
//   1. atoms are partitioned by the invariant tuple
//      (element, degree, charge, explicit H, aromatic, stereo)
//   2. ranks are refined with sorted (bond label, neighbor rank) multisets
//      until stable
//   3. remaining ties are resolved by individualizing each member of the
//      first tied cell in turn and keeping the lexicographically smallest
//      emitted string
// Throws std::invalid_argument on invalid or disconnected graphs.
MoleculeKey canonicalize(const MolGraph& g);

// parse + canonicalize in one step.
MoleculeKey canonical_key(std::string_view smiles);

// Canonical atom ranks (a permutation of 0..n-1) as used by canonicalize;
// exposed for tests.
std::vector<int> canonical_ranks(const MolGraph& g);

}  // namespace retro::chem
