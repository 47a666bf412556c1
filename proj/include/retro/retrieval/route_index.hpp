#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "retro/chem/fingerprint.hpp"
#include "retro/tree/and_or_tree.hpp"

namespace retro::retrieval {

using chem::Fingerprint;
using chem::MoleculeKey;
using tree::ReactionStep;

struct RouteRecord {
  MoleculeKey target;
  std::vector<ReactionStep> route;
  Fingerprint fingerprint;  // of the target, precomputed at ingestion
  std::int64_t source_id = 0;
};

struct LoadDiagnostics {
  std::int64_t records = 0;
  std::int64_t bad_lines = 0;
};

// Exact-scan nearest-neighbor index over route records. Immutable after
// build; shared freely across concurrent searches. Duplicate targets are
// kept as distinct records.
class RouteIndex {
 public:
  static RouteIndex build(std::vector<RouteRecord> records, int radius = 2);

  // Loads the line-delimited JSON route database
  //   {"target": smiles, "route": [{"product":..., "reactants":[...]}]}
  // canonicalizing and fingerprinting as it goes; bad lines are counted,
  // not fatal.
  static RouteIndex load_jsonl(const std::string& path, LoadDiagnostics* diag = nullptr,
                               int radius = 2);

  // Top k records by Tanimoto similarity to the query, descending; ties
  // broken by ascending source id. Fewer than k when the index is smaller.
  std::vector<RouteRecord> retrieve_top_k(const MoleculeKey& query, int k) const;

  std::size_t size() const { return records_.size(); }
  const std::vector<RouteRecord>& records() const { return records_; }
  int radius() const { return radius_; }

 private:
  std::vector<RouteRecord> records_;
  int radius_ = 2;
};

// Renders records in the step-dictionary route-block format the prompt's
// output section demands, so retrieved examples double as format
// demonstrations. Round-trips through parse_route_response.
std::string format_examples(const std::vector<RouteRecord>& records);

}  // namespace retro::retrieval
