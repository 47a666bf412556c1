#include "retro/gen/prompt.hpp"

#include <string>

namespace retro::gen {

namespace {

constexpr const char* kRole =
    "You are a professional chemist specializing in synthesis analysis.";

constexpr const char* kTask = R"(Your task is to propose a retrosynthesis route for a target molecule provided in SMILES format.

Definition:
A retrosynthesis route is a sequence of backward reactions that starts from the target molecules and ends with commercially purchasable building blocks.

Key concepts:
- Molecule set: The working set of molecules at any given step. Initially, it contains only the target molecule.
- Commercially purchasable: Molecules that can be directly bought from suppliers (permitted building blocks).
- Non-purchasable: Molecules that must be further decomposed via retrosynthesis steps.
- Reaction source: All reactions must be derived from the USPTO dataset, and stereochemistry (e.g., E/Z isomers, chiral centers) must be preserved.

Process:
1. Initialization: Start with the molecule set = [target molecule].
2. Iteration:
   - Select one non-purchasable molecule from the molecule set (the product).
   - Apply a valid backward reaction from the USPTO dataset to decompose it into reactants.
   - Remove the product molecule from the set.
   - Add the reactants to the set.
3. Termination: Continue until all molecules in the set are commercially purchasable.)";

constexpr const char* kTaskReduced =
    "Propose a retrosynthesis route for the target molecule.";

constexpr const char* kPlan =
    R"(analyze the target molecule and make a retrosynthesis plan in the <PLAN></PLAN> before proposing the route.

<PLAN>: Analyze the target molecule and plan for each step in the route. </PLAN>)";

constexpr const char* kExplanation =
    R"(After making the plan, you should explain the plan in the <EXPLANATION></EXPLANATION>.

<EXPLANATION>: Explain the plan. </EXPLANATION>)";

std::string examples_block(const chem::MoleculeKey& molecule, const std::string& examples,
                           int n_routes) {
  std::string out = "My target molecule is: " + molecule.smiles + "\n";
  if (!examples.empty()) {
    out += "\nTo assist you with the format, example retrosynthesis routes are provided:\n";
    out += examples;
    out += "\n";
  }
  if (n_routes >= 2)
    out += "\nPlease propose " + std::to_string(n_routes) +
           " different retrosynthesis routes for my target molecule.";
  else
    out += "\nPlease propose a retrosynthesis route for my target molecule.";
  return out;
}

std::string output_format_block(const PromptConfig& cfg) {
  std::string out =
      "The route should be a list of steps wrapped in <ROUTE></ROUTE>. "
      "Each step in the list should be a dictionary.\n"
      "At the first step, the molecule set should be the target molecules set "
      "given by the user. Here is an example:\n\n";
  out += "<ROUTE>\n[\n    {\n";
  out += "        'Molecule set': \"[Target Molecule]\",\n";
  if (cfg.include_rational)
    out += "        'Rational': \"Step analysis\",\n";
  out += "        'Product': \"[Product molecule]\",\n";
  if (cfg.include_reaction_field)
    out += "        'Reaction': \"[Reaction template]\",\n";
  out += "        'Reactants': \"[Reactant1, Reactant2]\",\n";
  out += "        'Updated molecule set': \"[Reactant1, Reactant2]\"\n";
  out += "    }\n]\n</ROUTE>";
  return out;
}

std::string requirements_block(const PromptConfig& cfg) {
  std::vector<std::string> items;
  items.push_back(
      "The 'Molecule set' contains molecules we need to synthesize at this stage. "
      "In the first step, it should be the target molecule. In the following steps, "
      "it should be the 'Updated molecule set' from the previous step.");
  if (cfg.include_rational)
    items.push_back(
        "The 'Rational' part in each step should be your analysis for synthesis "
        "planning in this step. It should be in the string format wrapped with ''");
  items.push_back(
      "'Product' is the molecule we plan to synthesize in this step. It should be "
      "from the 'Molecule set'. The molecule should be a molecule from the "
      "'Molecule set' in a list. The molecule smiles should be wrapped with ''.");
  if (cfg.include_reaction_field) {
    if (cfg.simple_reaction_format)
      items.push_back(
          "'Reaction' is a backward reaction which can decompose the product molecule "
          "into its reactants. It should be in the form 'product>>reactants'.");
    else
      items.push_back(
          "'Reaction' is a backward reaction which can decompose the product molecule "
          "into its reactants. The reaction should be in a list. All the molecules in "
          "the reaction template should be in SMILES format.");
  }
  items.push_back(
      "'Reactants' are the reactants of the reaction. It should be in a list. "
      "The molecule smiles should be wrapped with ''.");
  items.push_back(
      "The 'Updated molecule set' should be molecules we need to purchase or "
      "synthesize after taking this reaction. To get the 'Updated molecule set', "
      "you need to remove the product molecule from the 'Molecule set' and then add "
      "the reactants in this step into it. In the last step, all the molecules in "
      "the 'Updated molecule set' should be purchasable.");
  if (cfg.include_plan)
    items.push_back(
        "In the <PLAN>, you should analyze the target molecule and plan for the "
        "whole route.");
  if (cfg.include_explanation)
    items.push_back("In the <EXPLANATION>, you should analyze the plan.");

  std::string out = "Requirements:\n";
  for (std::size_t i = 0; i < items.size(); ++i) {
    out += std::to_string(i + 1) + ". " + items[i];
    if (i + 1 < items.size())
      out += "\n\n";
  }
  return out;
}

}  // namespace

std::string build_prompt(const chem::MoleculeKey& molecule,
                         const std::vector<retrieval::RouteRecord>& examples,
                         const PromptConfig& cfg) {
  std::vector<std::string> blocks;
  if (cfg.include_role)
    blocks.push_back(kRole);
  blocks.push_back(cfg.include_task ? kTask : kTaskReduced);

  std::string formatted;
  if (cfg.rag_k > 0 && !examples.empty())
    formatted = retrieval::format_examples(examples);
  int n_routes = cfg.rag_k > 0 ? cfg.rag_k : 1;
  blocks.push_back(examples_block(molecule, formatted, n_routes));

  if (cfg.include_plan)
    blocks.push_back(kPlan);
  if (cfg.include_explanation)
    blocks.push_back(kExplanation);
  blocks.push_back(output_format_block(cfg));
  blocks.push_back(requirements_block(cfg));

  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    out += blocks[i];
    if (i + 1 < blocks.size())
      out += "\n\n";
  }
  return out;
}

}  // namespace retro::gen
