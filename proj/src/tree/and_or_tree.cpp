#include "retro/tree/and_or_tree.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace retro::tree {

AndOrTree::AndOrTree(MoleculeKey target, MembershipFn is_purchasable, int max_depth)
    : max_depth_(max_depth), is_purchasable_(std::move(is_purchasable)) {
  if (max_depth_ < 1)
    throw std::invalid_argument("max_depth must be >= 1");
  root_ = insert_or(target, is_purchasable_ ? is_purchasable_(target) : false);
}

OrId AndOrTree::insert_or(const MoleculeKey& molecule, bool inventory_member) {
  if (auto it = molecule_index_.find(molecule); it != molecule_index_.end())
    return it->second;
  OrNode node;
  node.molecule = molecule;
  node.in_inventory = inventory_member;
  node.solved = inventory_member;
  OrId id = static_cast<OrId>(or_nodes_.size());
  or_nodes_.push_back(std::move(node));
  molecule_index_.emplace(molecule, id);
  return id;
}

AndOrTree::AttachOutcome AndOrTree::attach_and(const ReactionStep& step, OrId parent,
                                               int depth) {
  if (parent < 0 || parent >= or_count())
    throw std::out_of_range("attach_and: bad parent id");
  if (or_nodes_[parent].molecule != step.product)
    return {kNoNode, AttachError::ProductMismatch};

  // Duplicate suppression: identical (parent, reactant set) sibling.
  for (AndId sib : or_nodes_[parent].children) {
    if (and_nodes_[sib].step.reactants == step.reactants)
      return {sib, AttachError::DuplicateSibling};
  }

  // Cycle guard: a reactant equal to any molecule on a parent path to the
  // root would create infinite regress.
  auto ancestors = ancestor_molecules(parent);
  for (const auto& r : step.reactants) {
    if (ancestors.contains(r))
      return {kNoNode, AttachError::CycleDetected};
  }

  AndNode node;
  node.step = step;
  node.parent = parent;
  node.depth = depth;
  node.visits = 1;
  AndId id = static_cast<AndId>(and_nodes_.size());

  bool any_unsolved = false;
  for (const auto& r : step.reactants) {
    OrId rid = insert_or(r, is_purchasable_ ? is_purchasable_(r) : false);
    node.children.push_back(rid);
    or_nodes_[rid].parents.push_back(id);
    if (!or_nodes_[rid].solved)
      any_unsolved = true;
  }
  node.solved = !any_unsolved;

  and_nodes_.push_back(std::move(node));
  or_nodes_[parent].children.push_back(id);

  if (any_unsolved && depth < max_depth_)
    frontier_.insert(id);
  return {id, AttachError::None};
}

std::set<MoleculeKey> AndOrTree::update_solved() {
  std::set<MoleculeKey> flipped;
  bool changed = true;
  while (changed) {
    changed = false;
    for (AndId a = 0; a < and_count(); ++a) {
      AndNode& node = and_nodes_[a];
      if (node.solved)
        continue;
      bool all = true;
      for (OrId c : node.children)
        if (!or_nodes_[c].solved) {
          all = false;
          break;
        }
      if (all) {
        node.solved = true;
        remove_from_frontier(a);
        changed = true;
      }
    }
    for (OrId v = 0; v < or_count(); ++v) {
      OrNode& node = or_nodes_[v];
      if (node.solved)
        continue;
      bool solved = node.in_inventory;
      for (AndId c : node.children)
        if (and_nodes_[c].solved) {
          solved = true;
          break;
        }
      if (solved) {
        node.solved = true;
        flipped.insert(node.molecule);
        changed = true;
      }
    }
  }
  return flipped;
}

void AndOrTree::prune_solved(const std::set<MoleculeKey>& newly_solved) {
  std::set<AndId> seen;
  for (const auto& m : newly_solved) {
    auto it = molecule_index_.find(m);
    if (it == molecule_index_.end())
      continue;
    for (AndId a : or_nodes_[it->second].children) {
      remove_from_frontier(a);
      prune_recursive(a, seen);
    }
  }
}

void AndOrTree::prune_recursive(AndId id, std::set<AndId>& seen) {
  if (!seen.insert(id).second)
    return;
  for (OrId v : and_nodes_[id].children) {
    bool any_unsolved_parent = false;
    for (AndId p : or_nodes_[v].parents)
      if (!and_nodes_[p].solved) {
        any_unsolved_parent = true;
        break;
      }
    if (any_unsolved_parent)
      continue;
    for (AndId a : or_nodes_[v].children) {
      remove_from_frontier(a);
      prune_recursive(a, seen);
    }
  }
}

std::vector<AndId> AndOrTree::expandable_leaves(int max_depth) const {
  std::vector<AndId> out;
  for (AndId a : frontier_) {
    const AndNode& node = and_nodes_[a];
    if (!node.expandable || node.solved || node.depth >= max_depth)
      continue;
    bool unsolved_reactant = false;
    for (OrId c : node.children)
      if (!or_nodes_[c].solved && !or_nodes_[c].in_inventory) {
        unsolved_reactant = true;
        break;
      }
    if (unsolved_reactant)
      out.push_back(a);
  }
  return out;
}

void AndOrTree::record_generation_failure(AndId id, int threshold) {
  AndNode& node = and_nodes_[id];
  node.failures += 1;
  if (node.failures >= threshold) {
    node.expandable = false;
    remove_from_frontier(id);
  }
}

void AndOrTree::record_generation_success(AndId id) {
  and_nodes_[id].failures = 0;
}

void AndOrTree::backpropagate(AndId leaf, double reward) {
  AndNode& node = and_nodes_[leaf];
  node.mean_value = (node.visits * node.mean_value + reward) / (node.visits + 1);
  node.visits += 1;
  backpropagate_to_ancestors(leaf, reward);
}

void AndOrTree::backpropagate_to_ancestors(AndId leaf, double reward) {
  for (AndId a : ancestor_ands(leaf)) {
    AndNode& node = and_nodes_[a];
    node.mean_value = (node.visits * node.mean_value + reward) / (node.visits + 1);
    node.visits += 1;
  }
}

std::vector<AndId> AndOrTree::ancestor_ands(AndId from) const {
  std::vector<AndId> out;
  std::set<AndId> seen{from};
  std::deque<OrId> queue{and_nodes_[from].parent};
  std::set<OrId> seen_or{and_nodes_[from].parent};
  while (!queue.empty()) {
    OrId v = queue.front();
    queue.pop_front();
    for (AndId p : or_nodes_[v].parents) {
      if (!seen.insert(p).second)
        continue;
      out.push_back(p);
      if (seen_or.insert(and_nodes_[p].parent).second)
        queue.push_back(and_nodes_[p].parent);
    }
  }
  return out;
}

std::set<MoleculeKey> AndOrTree::ancestor_molecules(OrId from) const {
  std::set<MoleculeKey> out;
  std::deque<OrId> queue{from};
  std::set<OrId> seen{from};
  while (!queue.empty()) {
    OrId v = queue.front();
    queue.pop_front();
    out.insert(or_nodes_[v].molecule);
    for (AndId p : or_nodes_[v].parents) {
      OrId grand = and_nodes_[p].parent;
      if (seen.insert(grand).second)
        queue.push_back(grand);
    }
  }
  return out;
}

int AndOrTree::or_depth(OrId id) const {
  if (id == root_)
    return 0;
  int best = max_depth_ + 1;
  for (AndId p : or_nodes_[id].parents)
    best = std::min(best, and_nodes_[p].depth);
  return best;
}

std::optional<OrId> AndOrTree::find_molecule(const MoleculeKey& key) const {
  auto it = molecule_index_.find(key);
  if (it == molecule_index_.end())
    return std::nullopt;
  return it->second;
}

int AndOrTree::sibling_visit_total(AndId id) const {
  const OrNode& parent = or_nodes_[and_nodes_[id].parent];
  int total = 0;
  for (AndId s : parent.children)
    total += and_nodes_[s].visits;
  return total;
}

void AndOrTree::remove_from_frontier(AndId id) {
  frontier_.erase(id);
}

}  // namespace retro::tree
