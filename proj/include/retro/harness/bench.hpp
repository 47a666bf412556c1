#pragma once

#include <vector>

#include "retro/harness/metrics.hpp"
#include "retro/search/search.hpp"

namespace retro::harness {

struct BenchOptions {
  search::SearchConfig config;
  int parallelism = 1;
  // Replaces the wall clock with a per-search counter so record contents are
  // identical across runs and parallelism levels.
  bool deterministic_timing = false;
  bool compute_molecular_weight = false;
};

// Searches each target independently on a task pool. Records keep the input
// order regardless of completion order; per-target seeds derive from the
// master seed plus the target index. A failing target yields an "error"
// record, never aborts the batch.
std::vector<RunRecord> run_benchmark(const std::vector<chem::MoleculeKey>& targets,
                                     const search::SearchDeps& deps,
                                     const BenchOptions& options);

RunRecord record_from_result(const chem::MoleculeKey& target,
                             const search::SearchResult& result,
                             const search::ComplexityFn& scorer,
                             bool compute_molecular_weight);

}  // namespace retro::harness
