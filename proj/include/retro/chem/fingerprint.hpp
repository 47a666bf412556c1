#pragma once

#include <cstdint>
#include <set>

#include "retro/chem/molgraph.hpp"

namespace retro::chem {

// Hashed circular-substructure feature set (ECFP style). Features from all
// iterations 0..radius are unioned, so radius r is a superset of r-1.
struct Fingerprint {
  std::set<std::uint64_t> features;
  int radius = 0;
};

// Iteration 0 hashes the atom invariant (element, aromatic, degree, charge,
// explicit H); iteration k hashes (k, own feature, sorted neighbor
// (bond label, feature) pairs). Hashing is the fixed mix64 chain, so feature
// sets are byte-identical across runs and platforms.
Fingerprint morgan_fingerprint(const MolGraph& g, int radius = 2);

// |a n b| / |a u b|; defined as 1.0 when both sets are empty.
// Throws std::invalid_argument on radius mismatch.
double tanimoto(const Fingerprint& a, const Fingerprint& b);

}  // namespace retro::chem
