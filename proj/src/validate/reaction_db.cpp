#include "retro/validate/reaction_db.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "retro/chem/canonical.hpp"
#include "retro/chem/smiles.hpp"
#include "retro/util/text_io.hpp"

namespace retro::validate {

using nlohmann::json;

ReactionDb ReactionDb::build(std::vector<ReactionRecord> records, int radius) {
  ReactionDb db;
  db.records_ = std::move(records);
  db.radius_ = radius;
  for (std::size_t i = 0; i < db.records_.size(); ++i)
    db.by_product_[db.records_[i].product].push_back(i);
  return db;
}

ReactionDb ReactionDb::load_jsonl(const std::string& path, DbDiagnostics* diag, int radius) {
  std::vector<ReactionRecord> records;
  DbDiagnostics local;
  std::int64_t next_id = 0;
  bool opened = for_each_line(path, [&](std::string&& line) {
    if (line.empty())
      return;
    auto obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.contains("product") || !obj.contains("reactants")) {
      local.bad_lines += 1;
      return;
    }
    try {
      ReactionRecord rec;
      auto graph = chem::parse_smiles(obj["product"].get<std::string>());
      rec.product = chem::canonicalize(graph);
      rec.product_fingerprint = chem::morgan_fingerprint(graph, radius);
      for (const auto& r : obj["reactants"])
        rec.reactants.push_back(chem::canonical_key(r.get<std::string>()));
      std::sort(rec.reactants.begin(), rec.reactants.end());
      rec.reactants.erase(std::unique(rec.reactants.begin(), rec.reactants.end()),
                          rec.reactants.end());
      rec.reactants.erase(
          std::remove(rec.reactants.begin(), rec.reactants.end(), rec.product),
          rec.reactants.end());
      if (rec.reactants.empty()) {
        local.bad_lines += 1;
        return;
      }
      rec.source_id = next_id++;
      records.push_back(std::move(rec));
      local.records += 1;
    } catch (const std::exception&) {
      local.bad_lines += 1;
    }
  });
  if (!opened)
    throw std::runtime_error("cannot open reaction database: " + path);
  if (diag)
    *diag = local;
  return build(std::move(records), radius);
}

ValidationOutcome ReactionDb::validate_step(const ReactionStep& step) const {
  auto it = by_product_.find(step.product);
  if (it != by_product_.end()) {
    for (std::size_t idx : it->second) {
      if (records_[idx].reactants == step.reactants)
        return {Verdict::Valid, step};
    }
  }

  // Fallback: rank the whole database by product-fingerprint similarity,
  // keep the candidate pool, and take the most similar record that shares
  // the product key.
  if (records_.empty())
    return {Verdict::Invalid, step};
  Fingerprint qfp = chem::morgan_fingerprint(chem::parse_smiles(step.product.smiles), radius_);
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i)
    scored.emplace_back(chem::tanimoto(qfp, records_[i].product_fingerprint), i);
  auto better = [&](const auto& x, const auto& y) {
    if (x.first != y.first)
      return x.first > y.first;
    return records_[x.second].source_id < records_[y.second].source_id;
  };
  std::size_t pool = std::min<std::size_t>(candidate_pool_, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + pool, scored.end(), better);

  for (std::size_t i = 0; i < pool; ++i) {
    const ReactionRecord& rec = records_[scored[i].second];
    if (rec.product == step.product) {
      ReactionStep replacement;
      replacement.product = step.product;
      replacement.reactants = rec.reactants;
      replacement.reaction_template = step.reaction_template;
      return {Verdict::Replaced, replacement};
    }
  }
  return {Verdict::Invalid, step};
}

PathwayValidation ReactionDb::validate_pathway(const mapping::Pathway& p) const {
  PathwayValidation out;
  out.prefix.provenance = p.provenance;
  for (const auto& step : p.steps) {
    auto res = validate_step(step);
    if (res.verdict == Verdict::Invalid)
      break;
    out.prefix.steps.push_back(res.step);
  }
  if (out.prefix.steps.empty())
    out.verdict = PathwayVerdict::None;
  else if (out.prefix.steps.size() == p.steps.size())
    out.verdict = PathwayVerdict::Full;
  else
    out.verdict = PathwayVerdict::Partial;
  return out;
}

}  // namespace retro::validate
