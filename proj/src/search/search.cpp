#include "retro/search/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "retro/chem/canonical.hpp"
#include "retro/chem/complexity.hpp"
#include "retro/chem/smiles.hpp"
#include "retro/mapping/pathway.hpp"

namespace retro::search {

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Solved: return "solved";
    case SearchStatus::BudgetExhausted: return "budget_exhausted";
    case SearchStatus::SpaceExhausted: return "space_exhausted";
  }
  return "unknown";
}

int route_length(const RouteNode& node) {
  int count = node.children.empty() ? 0 : 1;
  for (const auto& c : node.children)
    count += route_length(c);
  return count;
}

ComplexityFn default_scorer() {
  return [](const MoleculeKey& key) {
    return chem::complexity_score(chem::parse_smiles(key.smiles));
  };
}

ClockFn steady_clock_ms() {
  return [] {
    auto now = std::chrono::steady_clock::now().time_since_epoch();
    return std::chrono::duration<double, std::milli>(now).count();
  };
}

double ucb(const tree::AndNode& a, int parent_total_visits, double c) {
  return a.mean_value +
         c * std::sqrt(std::log(static_cast<double>(parent_total_visits)) /
                       static_cast<double>(a.visits));
}

std::optional<AndId> select(const AndOrTree& t, const SearchConfig& cfg) {
  auto leaves = t.expandable_leaves(cfg.max_depth);
  std::optional<AndId> best;
  double best_score = 0.0;
  for (AndId a : leaves) {
    double score = ucb(t.and_node(a), t.sibling_visit_total(a), cfg.exploration_c);
    if (!best) {
      best = a;
      best_score = score;
      continue;
    }
    const auto& cand = t.and_node(a);
    const auto& incumbent = t.and_node(*best);
    bool wins = false;
    if (score > best_score) {
      wins = true;
    } else if (score == best_score) {
      if (cand.depth != incumbent.depth)
        wins = cand.depth < incumbent.depth;
      else if (cand.step.product != incumbent.step.product)
        wins = cand.step.product < incumbent.step.product;
      else
        wins = a < *best;
    }
    if (wins) {
      best = a;
      best_score = score;
    }
  }
  return best;
}

OrId select_target_molecule(const AndOrTree& t, AndId a) {
  const auto& node = t.and_node(a);
  OrId best = tree::kNoNode;
  for (OrId c : node.children) {
    const auto& reactant = t.or_node(c);
    if (reactant.solved || reactant.in_inventory)
      continue;
    if (best == tree::kNoNode) {
      best = c;
      continue;
    }
    const auto& incumbent = t.or_node(best);
    if (reactant.generation_attempts < incumbent.generation_attempts ||
        (reactant.generation_attempts == incumbent.generation_attempts &&
         reactant.molecule < incumbent.molecule))
      best = c;
  }
  if (best == tree::kNoNode)
    throw std::logic_error("select_target_molecule: node has no unsolved reactant");
  return best;
}

double evaluate_reward(const AndOrTree& t, AndId a, const ComplexityFn& scorer,
                       double alpha) {
  const auto& node = t.and_node(a);
  int total = static_cast<int>(node.children.size());
  int available = 0;
  double chem_sum = 0.0;
  int chem_count = 0;
  for (OrId c : node.children) {
    const auto& reactant = t.or_node(c);
    if (reactant.in_inventory) {
      ++available;
      continue;
    }
    double sc = scorer(reactant.molecule);
    chem_sum += std::clamp((5.0 - sc) / 4.0, 0.0, 1.0);
    ++chem_count;
  }
  double f_avail = total > 0 ? static_cast<double>(available) / total : 0.0;
  double f_chem = chem_count > 0 ? chem_sum / chem_count : 1.0;
  return alpha * f_avail + (1.0 - alpha) * f_chem;
}

namespace {

RouteNode extract_solved(const AndOrTree& t, OrId v) {
  const auto& node = t.or_node(v);
  RouteNode out;
  out.molecule = node.molecule;
  out.solved = true;
  out.in_inventory = node.in_inventory;
  if (node.in_inventory)
    return out;
  AndId pick = tree::kNoNode;
  for (AndId a : node.children) {
    const auto& cand = t.and_node(a);
    if (!cand.solved)
      continue;
    if (pick == tree::kNoNode || cand.mean_value > t.and_node(pick).mean_value)
      pick = a;
  }
  if (pick == tree::kNoNode)
    throw std::logic_error("solved molecule without a solved reaction");
  out.reaction_template = t.and_node(pick).step.reaction_template;
  for (OrId c : t.and_node(pick).children)
    out.children.push_back(extract_solved(t, c));
  return out;
}

RouteNode extract_greedy(const AndOrTree& t, OrId v) {
  const auto& node = t.or_node(v);
  if (node.solved)
    return extract_solved(t, v);
  RouteNode out;
  out.molecule = node.molecule;
  out.solved = false;
  out.in_inventory = node.in_inventory;
  if (node.children.empty())
    return out;  // open leaf
  AndId pick = node.children.front();
  for (AndId a : node.children)
    if (t.and_node(a).mean_value > t.and_node(pick).mean_value)
      pick = a;
  out.reaction_template = t.and_node(pick).step.reaction_template;
  for (OrId c : t.and_node(pick).children)
    out.children.push_back(extract_greedy(t, c));
  return out;
}

}  // namespace

RouteNode extract_solution(const AndOrTree& t) {
  if (!t.solved())
    throw std::logic_error("extract_solution requires a solved root");
  return extract_solved(t, t.root());
}

RouteNode extract_partial(const AndOrTree& t) {
  if (t.solved())
    throw std::logic_error("extract_partial requires an unsolved root");
  return extract_greedy(t, t.root());
}

namespace {

struct Runner {
  const SearchDeps& deps;
  const SearchConfig& config;
  AndOrTree& t;
  ComplexityFn scorer;
  ClockFn clock;
  gen::PromptConfig prompt;
  SearchResult& result;

  std::vector<retrieval::RouteRecord> retrieve(const MoleculeKey& molecule) {
    if (!deps.retriever || config.rag_k <= 0)
      return {};
    return deps.retriever->retrieve_top_k(molecule, config.rag_k);
  }

  // One generator invocation for `molecule`, mapping everything that
  // survives validation under the molecule's OR node. Returns the number of
  // newly attached AND nodes.
  int expand(OrId target_or, AndId selected, TraceEntry& entry) {
    const MoleculeKey molecule = t.or_node(target_or).molecule;
    entry.target = molecule;
    entry.selected = selected;
    entry.iteration = ++result.iterations_used;

    gen::GenerationResponse resp;
    bool transport_failed = false;
    try {
      resp = deps.generator->generate(molecule, retrieve(molecule), prompt);
    } catch (const gen::TransportError&) {
      transport_failed = true;
    }
    entry.transport_failure = transport_failed;
    entry.routes_returned = static_cast<int>(resp.pathways.size());
    result.input_tokens += resp.usage.input_tokens;
    result.output_tokens += resp.usage.output_tokens;
    entry.input_tokens = resp.usage.input_tokens;
    entry.output_tokens = resp.usage.output_tokens;

    int base_depth = t.or_depth(target_or);
    int new_nodes = 0;
    for (const auto& raw : resp.pathways) {
      auto norm = mapping::normalize_pathway(raw);
      if (!norm.pathway)
        continue;
      mapping::Pathway path = std::move(*norm.pathway);
      if (deps.validator) {
        auto validation = deps.validator->validate_pathway(path);
        if (validation.verdict == validate::PathwayVerdict::None)
          continue;
        path = std::move(validation.prefix);
      }
      auto mapped = mapping::map_pathway(t, path, base_depth);
      new_nodes += static_cast<int>(mapped.attached.size());
      for (AndId a : mapped.attached) {
        double r = evaluate_reward(t, a, scorer, config.alpha);
        t.and_node(a).mean_value = r;
        t.backpropagate_to_ancestors(a, r);
        entry.rewards.push_back(r);
      }
      for (AndId a : mapped.refreshed) {
        double r = evaluate_reward(t, a, scorer, config.alpha);
        t.backpropagate(a, r);
      }
    }
    entry.steps_mapped = new_nodes;

    auto newly_solved = t.update_solved();
    t.prune_solved(newly_solved);
    entry.solved_after = t.solved();
    return new_nodes;
  }
};

}  // namespace

SearchResult run(const MoleculeKey& target, const SearchDeps& deps,
                 const SearchConfig& config) {
  if (!deps.generator || !deps.inventory)
    throw std::invalid_argument("run requires a generator and an inventory");

  SearchResult result;
  ComplexityFn scorer = deps.scorer ? deps.scorer : default_scorer();
  ClockFn clock = deps.clock ? deps.clock : steady_clock_ms();
  double t0 = clock();

  auto tree_ptr = std::make_shared<AndOrTree>(
      target, [&](const MoleculeKey& k) { return deps.inventory->contains(k); },
      config.max_depth);
  AndOrTree& t = *tree_ptr;
  result.tree = tree_ptr;

  gen::PromptConfig prompt = config.prompt;
  prompt.rag_k = config.rag_k;

  Runner runner{deps, config, t, scorer, clock, prompt, result};

  if (!t.solved() && result.iterations_used < config.max_iterations) {
    // Initial expansion of the root target.
    TraceEntry entry;
    double it0 = clock();
    runner.expand(t.root(), tree::kNoNode, entry);
    entry.wall_ms = clock() - it0;
    result.trace.push_back(std::move(entry));
  }

  bool space_exhausted = false;
  while (!t.solved() && result.iterations_used < config.max_iterations) {
    auto selected = select(t, config);
    if (!selected) {
      space_exhausted = true;
      break;
    }
    OrId target_or = select_target_molecule(t, *selected);
    t.or_node(target_or).generation_attempts += 1;

    TraceEntry entry;
    double it0 = clock();
    int new_nodes = runner.expand(target_or, *selected, entry);
    entry.wall_ms = clock() - it0;
    result.trace.push_back(std::move(entry));

    if (new_nodes == 0)
      t.record_generation_failure(*selected, config.failure_threshold);
    else
      t.record_generation_success(*selected);
  }

  if (t.solved()) {
    result.status = SearchStatus::Solved;
    result.solution = extract_solution(t);
  } else {
    result.status = space_exhausted ? SearchStatus::SpaceExhausted
                                    : SearchStatus::BudgetExhausted;
    result.partial = extract_partial(t);
  }
  result.wall_ms = clock() - t0;
  return result;
}

}  // namespace retro::search
