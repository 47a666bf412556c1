#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "retro/gen/generator.hpp"
#include "retro/harness/inventory.hpp"
#include "retro/retrieval/route_index.hpp"
#include "retro/tree/and_or_tree.hpp"

namespace retro::harness {

// Synthetic decomposition world over small linear-chain molecules. Every
// target has exactly one ground-truth route of known depth ending in the
// inventory; the paired generator returns the true decomposition with
// probability `quality` and a corrupt response otherwise.
struct WorldParams {
  int n_targets = 50;
  int min_depth = 2;
  int max_depth = 6;
  int reactants_per_reaction = 2;  // one chain molecule + fillers from inventory
  int max_route_steps = 3;         // steps per generated route
  double quality = 1.0;            // probability of the true decomposition
  double corrupt_garbage_fraction = 0.5;  // corrupt mode: mapped garbage vs no route
  int inventory_size = 30;
  std::uint64_t seed = 0;
};

struct WorldTarget {
  chem::MoleculeKey molecule;
  int depth = 0;  // ground-truth route length
};

class SyntheticWorld {
 public:
  static SyntheticWorld make(const WorldParams& params);

  const WorldParams& params() const { return params_; }
  WorldParams& params() { return params_; }
  const std::vector<WorldTarget>& targets() const { return targets_; }
  const Inventory& inventory() const { return inventory_; }
  const std::vector<retrieval::RouteRecord>& route_records() const { return routes_; }
  const std::map<chem::MoleculeKey, tree::ReactionStep>& rules() const { return rules_; }

  std::optional<tree::ReactionStep> rule_for(const chem::MoleculeKey& key) const;

  // The ground-truth route from `key` down to inventory, capped at
  // `max_steps` (<= 0 means uncapped).
  std::vector<tree::ReactionStep> true_route(const chem::MoleculeKey& key,
                                             int max_steps) const;

  // Deterministic generator tied to this world's rules and seed; safe for
  // concurrent use, with per-molecule call counters driving the quality coin.
  std::shared_ptr<gen::Generator> make_generator() const;

  // Directory layout: world.json, inventory.txt, targets.txt, routes.jsonl,
  // rules.jsonl.
  void save(const std::string& dir) const;
  static SyntheticWorld load(const std::string& dir);

 private:
  WorldParams params_;
  std::vector<WorldTarget> targets_;
  Inventory inventory_;
  std::map<chem::MoleculeKey, tree::ReactionStep> rules_;
  std::vector<retrieval::RouteRecord> routes_;
};

}  // namespace retro::harness
