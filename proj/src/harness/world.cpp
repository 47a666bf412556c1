#include "retro/harness/world.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "retro/chem/canonical.hpp"
#include "retro/chem/fingerprint.hpp"
#include "retro/chem/smiles.hpp"
#include "retro/util/hash.hpp"
#include "retro/util/text_io.hpp"

namespace retro::harness {

using chem::MoleculeKey;
using nlohmann::json;
using tree::ReactionStep;

namespace {

constexpr const char* kAlphabet = "CNO";

// Random linear chain of the given heavy-atom count; always valid SMILES.
std::string random_chain(std::mt19937_64& rng, int length) {
  std::string s;
  s.reserve(length);
  for (int i = 0; i < length; ++i)
    s += kAlphabet[rng() % 3];
  return s;
}

MoleculeKey fresh_molecule(std::mt19937_64& rng, int length,
                           std::set<MoleculeKey>& used) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    MoleculeKey key = chem::canonical_key(random_chain(rng, length));
    if (used.insert(key).second)
      return key;
  }
  throw std::runtime_error("synthetic world: molecule space exhausted");
}

// Chain length per level: inventory molecules are short, each level above
// adds two atoms so the complexity proxy decreases strictly toward leaves.
int level_length(int level) { return 4 + 2 * level; }

struct WorldRules {
  std::map<MoleculeKey, ReactionStep> rules;
  std::unordered_set<MoleculeKey> inventory;

  std::vector<ReactionStep> true_route(const MoleculeKey& key, int max_steps) const {
    std::vector<ReactionStep> steps;
    MoleculeKey current = key;
    while (max_steps <= 0 || static_cast<int>(steps.size()) < max_steps) {
      auto it = rules.find(current);
      if (it == rules.end())
        break;
      steps.push_back(it->second);
      bool found = false;
      for (const auto& r : it->second.reactants) {
        if (!inventory.contains(r) && rules.contains(r)) {
          current = r;
          found = true;
          break;
        }
      }
      if (!found)
        break;
    }
    return steps;
  }
};

class WorldGenerator : public gen::Generator {
 public:
  WorldGenerator(std::shared_ptr<const WorldRules> rules, WorldParams params)
      : rules_(std::move(rules)), params_(std::move(params)) {}

  gen::GenerationResponse generate(const MoleculeKey& molecule,
                                   const std::vector<retrieval::RouteRecord>& examples,
                                   const gen::PromptConfig& cfg) override {
    std::string prompt = gen::build_prompt(molecule, examples, cfg);
    std::int64_t input_tokens = gen::estimate_tokens(prompt);

    int call_index;
    {
      std::lock_guard lock(mutex_);
      call_index = calls_[molecule]++;
    }
    std::mt19937_64 rng(mix64(hash_combine(
        hash_combine(params_.seed, chem::key_hash(molecule)),
        static_cast<std::uint64_t>(call_index))));

    auto rule = rules_->rules.find(molecule);
    if (rule == rules_->rules.end())
      return gen::response_from_text("No feasible route found for this molecule.",
                                     input_tokens);

    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) < params_.quality) {
      auto steps = rules_->true_route(molecule, params_.max_route_steps);
      return gen::response_from_text(render_route(molecule, steps), input_tokens);
    }
    if (coin(rng) < params_.corrupt_garbage_fraction) {
      // Plausible-looking but useless decomposition into unknown molecules.
      int garbage_len = level_length(params_.max_depth) + 4 + static_cast<int>(rng() % 5);
      ReactionStep step;
      step.product = molecule;
      std::set<MoleculeKey> used;
      for (int i = 0; i < std::max(1, params_.reactants_per_reaction); ++i)
        step.reactants.push_back(fresh_molecule(rng, garbage_len + i, used));
      std::sort(step.reactants.begin(), step.reactants.end());
      return gen::response_from_text(render_route(molecule, {step}), input_tokens);
    }
    return gen::response_from_text("Unable to propose a consistent route.", input_tokens);
  }

  std::string name() const override { return "grammar-world"; }

 private:
  static std::string render_route(const MoleculeKey& target,
                                  const std::vector<ReactionStep>& steps) {
    retrieval::RouteRecord record;
    record.target = target;
    record.route = steps;
    return retrieval::format_examples({record});
  }

  std::shared_ptr<const WorldRules> rules_;
  WorldParams params_;
  mutable std::mutex mutex_;
  std::unordered_map<MoleculeKey, int> calls_;
};

}  // namespace

std::optional<ReactionStep> SyntheticWorld::rule_for(const MoleculeKey& key) const {
  auto it = rules_.find(key);
  if (it == rules_.end())
    return std::nullopt;
  return it->second;
}

std::vector<ReactionStep> SyntheticWorld::true_route(const MoleculeKey& key,
                                                     int max_steps) const {
  WorldRules rules{rules_, inventory_.members()};
  return rules.true_route(key, max_steps);
}

std::shared_ptr<gen::Generator> SyntheticWorld::make_generator() const {
  auto rules = std::make_shared<WorldRules>();
  rules->rules = rules_;
  rules->inventory = inventory_.members();
  return std::make_shared<WorldGenerator>(std::move(rules), params_);
}

SyntheticWorld SyntheticWorld::make(const WorldParams& params) {
  if (params.min_depth < 1 || params.max_depth < params.min_depth)
    throw std::invalid_argument("synthetic world: bad depth range");
  if (params.reactants_per_reaction < 1)
    throw std::invalid_argument("synthetic world: needs >= 1 reactant per reaction");

  SyntheticWorld world;
  world.params_ = params;
  std::mt19937_64 rng(mix64(params.seed ^ 0xa0b1c2d3e4f50617ULL));
  std::set<MoleculeKey> used;

  std::vector<MoleculeKey> pool;
  for (int i = 0; i < std::max(params.inventory_size, params.reactants_per_reaction + 1);
       ++i) {
    MoleculeKey key = fresh_molecule(rng, 2 + static_cast<int>(rng() % 3), used);
    pool.push_back(key);
    world.inventory_.add(key);
  }

  auto pick_fillers = [&](int count) {
    std::vector<MoleculeKey> out;
    for (int i = 0; i < count; ++i)
      out.push_back(pool[rng() % pool.size()]);
    return out;
  };

  int depth_span = params.max_depth - params.min_depth + 1;
  for (int t = 0; t < params.n_targets; ++t) {
    int depth = params.min_depth + static_cast<int>(rng() % depth_span);

    // Chain of molecules, one per level; level 0 is the inventory.
    std::vector<MoleculeKey> chain;  // chain[l] is the level-(l+1) molecule
    for (int level = 1; level <= depth; ++level)
      chain.push_back(fresh_molecule(rng, level_length(level), used));

    std::vector<ReactionStep> route;
    for (int level = depth; level >= 1; --level) {
      ReactionStep step;
      step.product = chain[level - 1];
      if (level > 1)
        step.reactants.push_back(chain[level - 2]);
      for (const auto& filler :
           pick_fillers(params.reactants_per_reaction - (level > 1 ? 1 : 0)))
        step.reactants.push_back(filler);
      if (step.reactants.empty())
        step.reactants.push_back(pool[rng() % pool.size()]);
      std::sort(step.reactants.begin(), step.reactants.end());
      step.reactants.erase(std::unique(step.reactants.begin(), step.reactants.end()),
                           step.reactants.end());
      world.rules_[step.product] = step;
      route.push_back(step);
    }

    WorldTarget target;
    target.molecule = chain.back();
    target.depth = depth;
    world.targets_.push_back(target);

    retrieval::RouteRecord record;
    record.target = target.molecule;
    record.route = route;
    record.fingerprint =
        chem::morgan_fingerprint(chem::parse_smiles(target.molecule.smiles), 2);
    record.source_id = t;
    world.routes_.push_back(std::move(record));
  }
  return world;
}

void SyntheticWorld::save(const std::string& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  {
    std::ofstream out(fs::path(dir) / "world.json");
    json j;
    j["n_targets"] = params_.n_targets;
    j["min_depth"] = params_.min_depth;
    j["max_depth"] = params_.max_depth;
    j["reactants_per_reaction"] = params_.reactants_per_reaction;
    j["max_route_steps"] = params_.max_route_steps;
    j["quality"] = params_.quality;
    j["corrupt_garbage_fraction"] = params_.corrupt_garbage_fraction;
    j["inventory_size"] = params_.inventory_size;
    j["seed"] = params_.seed;
    out << j.dump(2) << "\n";
  }
  {
    std::ofstream out(fs::path(dir) / "inventory.txt");
    std::vector<std::string> lines;
    for (const auto& key : inventory_.members())
      lines.push_back(key.smiles);
    std::sort(lines.begin(), lines.end());
    for (const auto& line : lines)
      out << line << "\n";
  }
  {
    std::ofstream out(fs::path(dir) / "targets.txt");
    for (const auto& target : targets_)
      out << target.molecule.smiles << "\t" << target.depth << "\n";
  }
  {
    std::ofstream out(fs::path(dir) / "routes.jsonl");
    for (const auto& record : routes_) {
      json j;
      j["target"] = record.target.smiles;
      json steps = json::array();
      for (const auto& step : record.route) {
        json s;
        s["product"] = step.product.smiles;
        json reactants = json::array();
        for (const auto& r : step.reactants)
          reactants.push_back(r.smiles);
        s["reactants"] = reactants;
        steps.push_back(s);
      }
      j["route"] = steps;
      out << j.dump() << "\n";
    }
  }
  {
    std::ofstream out(fs::path(dir) / "rules.jsonl");
    for (const auto& [product, step] : rules_) {
      json s;
      s["product"] = product.smiles;
      json reactants = json::array();
      for (const auto& r : step.reactants)
        reactants.push_back(r.smiles);
      s["reactants"] = reactants;
      out << s.dump() << "\n";
    }
  }
}

SyntheticWorld SyntheticWorld::load(const std::string& dir) {
  namespace fs = std::filesystem;
  SyntheticWorld world;

  {
    std::ifstream in(fs::path(dir) / "world.json");
    if (!in)
      throw std::runtime_error("cannot open " + dir + "/world.json");
    json j = json::parse(in);
    world.params_.n_targets = j.value("n_targets", 0);
    world.params_.min_depth = j.value("min_depth", 1);
    world.params_.max_depth = j.value("max_depth", 6);
    world.params_.reactants_per_reaction = j.value("reactants_per_reaction", 2);
    world.params_.max_route_steps = j.value("max_route_steps", 3);
    world.params_.quality = j.value("quality", 1.0);
    world.params_.corrupt_garbage_fraction = j.value("corrupt_garbage_fraction", 0.5);
    world.params_.inventory_size = j.value("inventory_size", 0);
    world.params_.seed = j.value("seed", 0ULL);
  }
  world.inventory_ = Inventory::load((fs::path(dir) / "inventory.txt").string());

  bool ok = for_each_line((fs::path(dir) / "targets.txt").string(), [&](std::string&& line) {
    if (line.empty())
      return;
    auto tab = line.find('\t');
    WorldTarget target;
    target.molecule = MoleculeKey{tab == std::string::npos ? line : line.substr(0, tab)};
    target.depth = tab == std::string::npos ? 0 : std::stoi(line.substr(tab + 1));
    world.targets_.push_back(std::move(target));
  });
  if (!ok)
    throw std::runtime_error("cannot open " + dir + "/targets.txt");

  retrieval::LoadDiagnostics diag;
  auto index = retrieval::RouteIndex::load_jsonl((fs::path(dir) / "routes.jsonl").string(),
                                                 &diag);
  world.routes_ = index.records();

  ok = for_each_line((fs::path(dir) / "rules.jsonl").string(), [&](std::string&& line) {
    if (line.empty())
      return;
    auto obj = json::parse(line, nullptr, false);
    if (obj.is_discarded())
      return;
    ReactionStep step;
    step.product = MoleculeKey{obj["product"].get<std::string>()};
    for (const auto& r : obj["reactants"])
      step.reactants.push_back(MoleculeKey{r.get<std::string>()});
    std::sort(step.reactants.begin(), step.reactants.end());
    world.rules_[step.product] = step;
  });
  if (!ok)
    throw std::runtime_error("cannot open " + dir + "/rules.jsonl");
  return world;
}

}  // namespace retro::harness
