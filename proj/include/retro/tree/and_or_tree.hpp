#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "retro/chem/molgraph.hpp"

namespace retro::tree {

using chem::MoleculeKey;

using OrId = std::int32_t;
using AndId = std::int32_t;
constexpr OrId kNoNode = -1;

// One reaction step: product decomposed into a reactant set. Reactants are
// canonical, deduplicated and sorted; the product never appears among them.
struct ReactionStep {
  MoleculeKey product;
  std::vector<MoleculeKey> reactants;
  std::string reaction_template;  // raw text from the generator, may be empty

  friend bool operator==(const ReactionStep&, const ReactionStep&) = default;
};

struct OrNode {
  MoleculeKey molecule;
  bool solved = false;
  bool in_inventory = false;
  std::vector<AndId> children;  // alternative reactions
  std::vector<AndId> parents;   // reactions consuming this molecule
  int generation_attempts = 0;
};

struct AndNode {
  ReactionStep step;
  OrId parent = kNoNode;
  std::vector<OrId> children;  // reactant molecules
  double mean_value = 0.0;
  int visits = 1;
  int depth = 1;
  bool solved = false;
  bool expandable = true;
  int failures = 0;
};

// Arena of OR (molecule) and AND (reaction) nodes plus the active frontier.
// One OR node per canonical molecule; nodes are never deallocated while a
// search runs (only frontier membership changes), so ids stay stable for
// solution extraction and export. Single writer per tree.
class AndOrTree {
 public:
  using MembershipFn = std::function<bool(const MoleculeKey&)>;

  // `is_purchasable` classifies molecules created during attach_and; the
  // target's own flag is taken from it as well.
  AndOrTree(MoleculeKey target, MembershipFn is_purchasable, int max_depth = 16);

  // Returns the existing id when the molecule is already present, otherwise
  // creates a node whose solved flag mirrors inventory membership.
  OrId insert_or(const MoleculeKey& molecule, bool inventory_member);

  // Links a reaction under `parent`, creating/linking reactant OR nodes via
  // insert_or. Visits start at 1. The node enters the frontier iff it has an
  // unsolved reactant and depth < max_depth. Rejections (see AttachError)
  // leave the tree untouched.
  enum class AttachError { None, ProductMismatch, DuplicateSibling, CycleDetected };
  struct AttachOutcome {
    AndId id = kNoNode;
    AttachError error = AttachError::None;
  };
  AttachOutcome attach_and(const ReactionStep& step, OrId parent, int depth);

  // Fixed-point solved propagation: an OR is solved iff it is in inventory
  // or any child AND is solved; an AND iff all child ORs are solved.
  // Returns the molecules whose status flipped during this call. Newly
  // solved AND nodes leave the frontier.
  std::set<MoleculeKey> update_solved();

  // Frontier-only pruning of solved subtrees: child reactions of each newly
  // solved molecule leave the frontier, and recursively so do descendants
  // reachable only through solved parents.
  void prune_solved(const std::set<MoleculeKey>& newly_solved);

  // Frontier filtered to expandable nodes below the depth limit that still
  // have at least one unsolved, non-inventory reactant.
  std::vector<AndId> expandable_leaves(int max_depth) const;

  // Registers a failed generation attempt against the node; after
  // `threshold` consecutive failures the node becomes non-expandable and
  // leaves the frontier. A success resets the streak.
  void record_generation_failure(AndId id, int threshold);
  void record_generation_success(AndId id);

  // Running-mean update at `leaf` and every ancestor AND node.
  void backpropagate(AndId leaf, double reward);
  // Same update for the ancestors only (the node's own statistics already
  // include its initial reward).
  void backpropagate_to_ancestors(AndId leaf, double reward);

  // All AND nodes on parent paths from `from` to the root, deduplicated;
  // excludes `from` itself.
  std::vector<AndId> ancestor_ands(AndId from) const;
  // All OR molecules on parent paths from `from` (inclusive) to the root.
  std::set<MoleculeKey> ancestor_molecules(OrId from) const;

  // Depth of an OR node: 0 for the root, otherwise the minimum depth over
  // parent AND nodes.
  int or_depth(OrId id) const;

  OrId root() const { return root_; }
  const OrNode& or_node(OrId id) const { return or_nodes_[id]; }
  OrNode& or_node(OrId id) { return or_nodes_[id]; }
  const AndNode& and_node(AndId id) const { return and_nodes_[id]; }
  AndNode& and_node(AndId id) { return and_nodes_[id]; }
  int or_count() const { return static_cast<int>(or_nodes_.size()); }
  int and_count() const { return static_cast<int>(and_nodes_.size()); }
  std::optional<OrId> find_molecule(const MoleculeKey& key) const;
  const std::set<AndId>& frontier() const { return frontier_; }
  int max_depth() const { return max_depth_; }
  bool solved() const { return or_nodes_[root_].solved; }

  // Sum of visits over the parent OR's child AND nodes (the sibling scope
  // used by selection).
  int sibling_visit_total(AndId id) const;

 private:
  void remove_from_frontier(AndId id);
  void prune_recursive(AndId id, std::set<AndId>& seen);

  std::vector<OrNode> or_nodes_;
  std::vector<AndNode> and_nodes_;
  std::unordered_map<MoleculeKey, OrId> molecule_index_;
  std::set<AndId> frontier_;
  OrId root_ = kNoNode;
  int max_depth_ = 16;
  MembershipFn is_purchasable_;
};

}  // namespace retro::tree
