#pragma once

#include <optional>
#include <string>
#include <vector>

#include "retro/tree/and_or_tree.hpp"

namespace retro::mapping {

// A pathway as emitted by a generator, before canonicalization.
struct RawStep {
  std::string product;
  std::vector<std::string> reactants;
  std::string reaction_template;
};

struct RawPathway {
  std::vector<RawStep> steps;
  std::string provenance;  // generator id / raw-text reference
};

// Canonicalized pathway: every molecule replaced by its MoleculeKey,
// duplicate reactants merged, self-decomposition steps dropped.
struct Pathway {
  std::vector<tree::ReactionStep> steps;
  std::string provenance;
};

struct NormalizeResult {
  std::optional<Pathway> pathway;  // empty when zero steps survived
  int dropped_unparseable = 0;
  int dropped_self_loop = 0;
};

NormalizeResult normalize_pathway(const RawPathway& raw);

struct MapResult {
  std::vector<tree::AndId> attached;   // newly created AND nodes, in order
  std::vector<tree::AndId> refreshed;  // duplicate steps hitting existing siblings
  int skipped_orphan = 0;  // product not present in the tree
  int skipped_solved = 0;  // product already solved
  int skipped_cycle = 0;   // reactant equals an ancestor molecule
};

// Walks the steps in order: a step whose product is absent from the tree or
// already solved is skipped; everything else attaches at
// depth = base_depth + step index (1-based within the pathway).
MapResult map_pathway(tree::AndOrTree& t, const Pathway& p, int base_depth);

}  // namespace retro::mapping
