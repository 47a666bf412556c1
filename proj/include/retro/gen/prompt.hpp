#pragma once

#include <string>
#include <vector>

#include "retro/chem/molgraph.hpp"
#include "retro/retrieval/route_index.hpp"

namespace retro::gen {

// Prompt component toggles mirroring the ablation study: each flag removes
// (or, for the task, reduces) one block of the assembled prompt.
struct PromptConfig {
  bool include_role = true;
  bool include_task = true;
  bool include_plan = true;
  bool include_explanation = true;
  bool include_rational = true;
  bool include_reaction_field = true;
  bool simple_reaction_format = false;
  int rag_k = 3;
  double temperature = 0.7;
  int max_tokens = 4096;
};

// Concatenates the enabled components in fixed order: role, task, examples,
// plan requirement, explanation requirement, output format, detailed
// requirements. Disabled components leave no placeholder text; the target
// molecule is interpolated exactly once.
std::string build_prompt(const chem::MoleculeKey& molecule,
                         const std::vector<retrieval::RouteRecord>& examples,
                         const PromptConfig& cfg);

}  // namespace retro::gen
