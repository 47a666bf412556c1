#include "retro/mapping/pathway.hpp"

#include <algorithm>

#include "retro/chem/canonical.hpp"

namespace retro::mapping {

using tree::AndOrTree;
using tree::ReactionStep;

NormalizeResult normalize_pathway(const RawPathway& raw) {
  NormalizeResult result;
  Pathway out;
  out.provenance = raw.provenance;
  for (const auto& step : raw.steps) {
    ReactionStep canonical;
    try {
      canonical.product = chem::canonical_key(step.product);
      for (const auto& r : step.reactants)
        canonical.reactants.push_back(chem::canonical_key(r));
    } catch (const std::exception&) {
      result.dropped_unparseable += 1;
      continue;
    }
    std::sort(canonical.reactants.begin(), canonical.reactants.end());
    canonical.reactants.erase(
        std::unique(canonical.reactants.begin(), canonical.reactants.end()),
        canonical.reactants.end());
    if (canonical.reactants.empty()) {
      result.dropped_unparseable += 1;
      continue;
    }
    if (std::find(canonical.reactants.begin(), canonical.reactants.end(),
                  canonical.product) != canonical.reactants.end()) {
      result.dropped_self_loop += 1;
      continue;
    }
    canonical.reaction_template = step.reaction_template;
    out.steps.push_back(std::move(canonical));
  }
  if (!out.steps.empty())
    result.pathway = std::move(out);
  return result;
}

MapResult map_pathway(AndOrTree& t, const Pathway& p, int base_depth) {
  MapResult result;
  int index = 0;
  for (const auto& step : p.steps) {
    ++index;
    auto product = t.find_molecule(step.product);
    if (!product) {
      result.skipped_orphan += 1;
      continue;
    }
    if (t.or_node(*product).solved) {
      result.skipped_solved += 1;
      continue;
    }
    auto outcome = t.attach_and(step, *product, base_depth + index);
    switch (outcome.error) {
      case AndOrTree::AttachError::None:
        result.attached.push_back(outcome.id);
        break;
      case AndOrTree::AttachError::DuplicateSibling:
        result.refreshed.push_back(outcome.id);
        break;
      case AndOrTree::AttachError::CycleDetected:
        result.skipped_cycle += 1;
        break;
      case AndOrTree::AttachError::ProductMismatch:
        // Unreachable: the node was looked up by product key.
        break;
    }
  }
  return result;
}

}  // namespace retro::mapping
