#pragma once

#include "retro/chem/molgraph.hpp"

namespace retro::chem {

// Heuristic synthetic-complexity proxy on the conventional [1, 5] scale.
// This is NOT a trained SC model; it is a deterministic stand-in:
//   score = clamp(1 + 0.8*ln(heavy atoms) + 0.3*rings + 0.2*stereo, 1, 5)
// where rings is the cyclomatic number and stereo counts atom and bond
// stereo annotations. A single-atom molecule sits exactly on the floor.
double complexity_score(const MolGraph& g);

// Molecular weight from standard atomic weights, including explicit
// hydrogens and an implicit-hydrogen estimate for organic-subset atoms
// (lowest standard valence covering the bond order sum; aromatic bonds
// count 1.5). Optional metric only.
double molecular_weight(const MolGraph& g);

}  // namespace retro::chem
