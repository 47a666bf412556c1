#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "retro/util/hash.hpp"

namespace retro::chem {

enum class BondOrder : std::uint8_t { Single = 1, Double = 2, Triple = 3, Aromatic = 4 };

// Up/down markers on single bonds. Kept as opaque annotations: they enter
// canonical identity but carry no geometric meaning here.
enum class BondDir : std::uint8_t { None = 0, Up, Down };  // '/' and '\'

// '@' / '@@' markers, likewise opaque.
enum class AtomStereo : std::uint8_t { None = 0, CCW, CW };

// explicit_h == kImplicitH means "not stated" (organic-subset atom whose
// hydrogen count is implied by valence). Bracket atoms always state it.
constexpr int kImplicitH = -1;

struct Atom {
  std::string element;     // e.g. "C", "Cl"; case as in the periodic table
  bool aromatic = false;   // lowercase in SMILES
  int charge = 0;
  int explicit_h = kImplicitH;
  AtomStereo stereo = AtomStereo::None;

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Bond {
  int a = 0;
  int b = 0;
  BondOrder order = BondOrder::Single;
  BondDir dir = BondDir::None;  // only meaningful on single bonds

  friend bool operator==(const Bond&, const Bond&) = default;
};

// Plain labeled undirected graph; chemistry semantics beyond the labels
// (valence, aromaticity perception) are intentionally absent.
struct MolGraph {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;

  int atom_count() const { return static_cast<int>(atoms.size()); }
  int bond_count() const { return static_cast<int>(bonds.size()); }

  // Throws std::invalid_argument on violated structural invariants:
  // zero atoms, bad endpoints, self loops, duplicate bonds, a direction
  // marker on a non-single bond, or an atom whose bracket-only decorations
  // (charge, stereo) are combined with an implicit hydrogen count.
  void validate() const;

  // Neighbor lists as (bond index, other endpoint) pairs.
  std::vector<std::vector<std::pair<int, int>>> adjacency() const;

  bool connected() const;
};

// Canonical identity of a molecule: the canonical SMILES string of the
// subset grammar. The sole key used for node dedup, inventory membership
// and retrieval.
struct MoleculeKey {
  std::string smiles;

  auto operator<=>(const MoleculeKey&) const = default;
};

inline std::uint64_t key_hash(const MoleculeKey& k) { return hash_bytes(k.smiles); }

}  // namespace retro::chem

template <>
struct std::hash<retro::chem::MoleculeKey> {
  std::size_t operator()(const retro::chem::MoleculeKey& k) const noexcept {
    return static_cast<std::size_t>(retro::chem::key_hash(k));
  }
};
