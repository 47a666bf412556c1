#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace retro::harness {

// Per-target search outcome, one line of the run log.
struct RunRecord {
  std::string target;  // canonical SMILES
  std::string status;  // solved | budget_exhausted | space_exhausted | error
  int iterations_used = 0;
  double wall_ms = 0.0;
  std::int64_t input_tokens = 0;
  std::int64_t output_tokens = 0;
  double complexity = 0.0;        // heuristic SC score of the target
  double molecular_weight = 0.0;  // optional metric; 0 when not computed
  int route_length = -1;          // reactions in the solved route, -1 otherwise
  std::string error;              // non-empty when the search itself failed

  bool solved() const { return status == "solved"; }
};

struct QuartileStats {
  int count = 0;
  double solve_rate = 0.0;
  double mean_iterations_solved = 0.0;  // 0 when nothing solved
  double min_score = 0.0;
  double max_score = 0.0;
};

struct BenchmarkReport {
  int targets = 0;
  std::vector<std::pair<int, double>> solve_rate_at;  // (threshold N, SR)
  double overall_solve_rate = 0.0;
  double mean_iterations_solved = 0.0;
  std::vector<QuartileStats> quartiles;     // by complexity score, Q1 simplest
  std::vector<QuartileStats> mw_quartiles;  // by molecular weight, when present
  std::int64_t total_input_tokens = 0;
  std::int64_t total_output_tokens = 0;
  double mean_input_tokens = 0.0;
  double mean_output_tokens = 0.0;
};

// SR(N) = fraction of targets solved within N iterations. Quartiles sort
// targets by the stratification score and split into `quartile_count` parts,
// remainder going to the earlier quartiles. Thresholds must be ascending.
BenchmarkReport compute_metrics(const std::vector<RunRecord>& records,
                                const std::vector<int>& thresholds,
                                int quartile_count = 4);

std::string render_report(const BenchmarkReport& report);

}  // namespace retro::harness
