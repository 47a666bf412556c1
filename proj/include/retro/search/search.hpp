#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "retro/gen/generator.hpp"
#include "retro/harness/inventory.hpp"
#include "retro/retrieval/route_index.hpp"
#include "retro/tree/and_or_tree.hpp"
#include "retro/validate/reaction_db.hpp"

namespace retro::search {

using chem::MoleculeKey;
using tree::AndId;
using tree::AndOrTree;
using tree::OrId;

struct SearchConfig {
  double exploration_c = 0.5;  // UCB exploration constant
  double alpha = 0.4;          // availability weight in the reward
  int max_depth = 16;
  int max_iterations = 100;
  int rag_k = 3;
  int failure_threshold = 3;  // consecutive empty generations -> non-expandable
  std::uint64_t seed = 0;
  gen::PromptConfig prompt;  // temperature / max_tokens / ablation flags
};

enum class SearchStatus { Solved, BudgetExhausted, SpaceExhausted };

const char* to_string(SearchStatus s);

// Extracted route tree: a molecule plus, for non-leaves, the chosen
// decomposition. `solved` is false only on the open leaves of a partial
// extraction.
struct RouteNode {
  MoleculeKey molecule;
  bool solved = true;
  bool in_inventory = false;
  std::string reaction_template;
  std::vector<RouteNode> children;
};

int route_length(const RouteNode& node);  // number of reactions

// One generator invocation, including the initial expansion (iteration 1).
struct TraceEntry {
  int iteration = 0;
  AndId selected = tree::kNoNode;  // kNoNode for the initial expansion
  MoleculeKey target;              // molecule the generator was asked about
  int routes_returned = 0;
  int steps_mapped = 0;  // newly attached AND nodes
  std::vector<double> rewards;
  bool transport_failure = false;
  bool solved_after = false;
  double wall_ms = 0.0;
  std::int64_t input_tokens = 0;
  std::int64_t output_tokens = 0;
};

struct SearchResult {
  SearchStatus status = SearchStatus::SpaceExhausted;
  int iterations_used = 0;  // generator invocations, initial expansion included
  std::optional<RouteNode> solution;
  std::optional<RouteNode> partial;
  std::vector<TraceEntry> trace;
  std::int64_t input_tokens = 0;
  std::int64_t output_tokens = 0;
  double wall_ms = 0.0;
  std::shared_ptr<AndOrTree> tree;  // full arena, for export and inspection
};

using ComplexityFn = std::function<double(const MoleculeKey&)>;
using ClockFn = std::function<double()>;  // milliseconds, monotonic

// Default scorer: parse + heuristic complexity proxy.
ComplexityFn default_scorer();
// Steady-clock milliseconds; tests substitute a fake for byte-stable traces.
ClockFn steady_clock_ms();

struct SearchDeps {
  gen::Generator* generator = nullptr;
  const retrieval::RouteIndex* retriever = nullptr;  // null -> no examples
  const validate::ReactionDb* validator = nullptr;   // null -> accept all steps
  const harness::Inventory* inventory = nullptr;
  ComplexityFn scorer;  // defaults to default_scorer()
  ClockFn clock;        // defaults to steady_clock_ms()
};

// v_mean + c * sqrt(ln(N_parent) / n). parent_total_visits sums visits over
// the parent OR's child AND nodes and is >= a.visits.
double ucb(const tree::AndNode& a, int parent_total_visits, double c);

// Argmax of ucb over expandable leaves; ties broken by lower depth, then
// lexicographically smaller product molecule, then creation order.
std::optional<AndId> select(const AndOrTree& t, const SearchConfig& cfg);

// Among the unsolved, non-inventory reactants of `a`: the one with the
// fewest generation attempts, ties by lexicographically smaller key.
// Throws std::logic_error when `a` has no such reactant.
OrId select_target_molecule(const AndOrTree& t, AndId a);

// alpha * f_avail + (1 - alpha) * f_chem, where f_avail is the purchasable
// fraction of reactants and f_chem averages (5 - SC) / 4 over the
// non-purchasable ones (1.0 when there are none).
double evaluate_reward(const AndOrTree& t, AndId a, const ComplexityFn& scorer,
                       double alpha);

// Requires a solved root: picks, per solved OR node, the solved child AND
// with the highest mean value (ties to the earliest-created), down to
// inventory leaves.
RouteNode extract_solution(const AndOrTree& t);

// Requires an unsolved root: greedy descent along max-mean-value children,
// emitting solved subbranches and flagging unsolved leaves.
RouteNode extract_partial(const AndOrTree& t);

// The full loop: initial expansion for the target, then
// select / expand / evaluate / backpropagate / propagate solved / prune
// until solved, budget exhausted, or no expandable node remains. One
// iteration is one generator invocation.
SearchResult run(const MoleculeKey& target, const SearchDeps& deps,
                 const SearchConfig& config);

}  // namespace retro::search
