#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "retro/chem/fingerprint.hpp"
#include "retro/mapping/pathway.hpp"
#include "retro/tree/and_or_tree.hpp"

namespace retro::validate {

using chem::Fingerprint;
using chem::MoleculeKey;
using tree::ReactionStep;

struct ReactionRecord {
  MoleculeKey product;
  std::vector<MoleculeKey> reactants;  // canonical, sorted, product excluded
  Fingerprint product_fingerprint;
  std::int64_t source_id = 0;
};

enum class Verdict { Valid, Replaced, Invalid };

struct ValidationOutcome {
  Verdict verdict = Verdict::Invalid;
  ReactionStep step;  // original or the replacement (same product)
};

enum class PathwayVerdict { Full, Partial, None };

struct PathwayValidation {
  mapping::Pathway prefix;  // leading steps that validated, possibly replaced
  PathwayVerdict verdict = PathwayVerdict::None;
};

struct DbDiagnostics {
  std::int64_t records = 0;
  std::int64_t bad_lines = 0;
};

// Reaction database for step validation. Immutable after load; shareable
// across concurrent searches.
class ReactionDb {
 public:
  static ReactionDb build(std::vector<ReactionRecord> records, int radius = 2);

  // Line-delimited JSON {"product": smiles, "reactants": [smiles...]};
  // bad lines counted, not fatal.
  static ReactionDb load_jsonl(const std::string& path, DbDiagnostics* diag = nullptr,
                               int radius = 2);

  // Exact (product, reactant set) match -> Valid. Otherwise the most
  // similar record among the top `candidate_pool` by product-fingerprint
  // similarity that shares the product key replaces the step's reactants
  // -> Replaced. Otherwise Invalid.
  ValidationOutcome validate_step(const ReactionStep& step) const;

  // Steps validated in order; the first invalid step truncates the rest.
  // Zero valid steps -> None and an empty prefix.
  PathwayValidation validate_pathway(const mapping::Pathway& p) const;

  std::size_t size() const { return records_.size(); }
  int candidate_pool() const { return candidate_pool_; }

 private:
  std::vector<ReactionRecord> records_;
  std::unordered_map<MoleculeKey, std::vector<std::size_t>> by_product_;
  int radius_ = 2;
  int candidate_pool_ = 100;
};

}  // namespace retro::validate
