#include "retro/harness/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace retro::harness {

namespace {

std::vector<QuartileStats> stratify(const std::vector<RunRecord>& records,
                                    int quartile_count, double (*score)(const RunRecord&)) {
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return score(records[x]) < score(records[y]);
  });

  std::vector<QuartileStats> out;
  std::size_t n = records.size();
  std::size_t base = quartile_count > 0 ? n / quartile_count : 0;
  std::size_t remainder = quartile_count > 0 ? n % quartile_count : 0;
  std::size_t cursor = 0;
  for (int q = 0; q < quartile_count; ++q) {
    std::size_t size = base + (static_cast<std::size_t>(q) < remainder ? 1 : 0);
    QuartileStats stats;
    stats.count = static_cast<int>(size);
    int solved = 0;
    double iter_sum = 0.0;
    for (std::size_t k = 0; k < size; ++k) {
      const RunRecord& rec = records[order[cursor + k]];
      if (k == 0)
        stats.min_score = score(rec);
      stats.max_score = score(rec);
      if (rec.solved()) {
        ++solved;
        iter_sum += rec.iterations_used;
      }
    }
    if (size > 0) {
      stats.solve_rate = static_cast<double>(solved) / static_cast<double>(size);
      stats.mean_iterations_solved = solved > 0 ? iter_sum / solved : 0.0;
    }
    cursor += size;
    out.push_back(stats);
  }
  return out;
}

double complexity_of(const RunRecord& r) { return r.complexity; }
double mw_of(const RunRecord& r) { return r.molecular_weight; }

}  // namespace

BenchmarkReport compute_metrics(const std::vector<RunRecord>& records,
                                const std::vector<int>& thresholds, int quartile_count) {
  for (std::size_t i = 1; i < thresholds.size(); ++i)
    if (thresholds[i] < thresholds[i - 1])
      throw std::invalid_argument("thresholds must be sorted ascending");

  BenchmarkReport report;
  report.targets = static_cast<int>(records.size());

  int solved = 0;
  double iter_sum = 0.0;
  for (const auto& r : records) {
    report.total_input_tokens += r.input_tokens;
    report.total_output_tokens += r.output_tokens;
    if (r.solved()) {
      ++solved;
      iter_sum += r.iterations_used;
    }
  }
  if (report.targets > 0) {
    report.overall_solve_rate = static_cast<double>(solved) / report.targets;
    report.mean_input_tokens =
        static_cast<double>(report.total_input_tokens) / report.targets;
    report.mean_output_tokens =
        static_cast<double>(report.total_output_tokens) / report.targets;
  }
  report.mean_iterations_solved = solved > 0 ? iter_sum / solved : 0.0;

  for (int n : thresholds) {
    int within = 0;
    for (const auto& r : records)
      if (r.solved() && r.iterations_used <= n)
        ++within;
    double sr = report.targets > 0 ? static_cast<double>(within) / report.targets : 0.0;
    report.solve_rate_at.emplace_back(n, sr);
  }

  if (report.targets > 0 && quartile_count > 0) {
    report.quartiles = stratify(records, quartile_count, complexity_of);
    bool any_mw = std::any_of(records.begin(), records.end(),
                              [](const RunRecord& r) { return r.molecular_weight > 0; });
    if (any_mw)
      report.mw_quartiles = stratify(records, quartile_count, mw_of);
  }
  return report;
}

namespace {

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", v * 100.0);
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void render_quartiles(std::string& out, const char* title,
                      const std::vector<QuartileStats>& quartiles) {
  out += title;
  out += "\n  quartile  count  solve-rate  mean-iters  score-range\n";
  for (std::size_t q = 0; q < quartiles.size(); ++q) {
    const auto& s = quartiles[q];
    out += "  Q" + std::to_string(q + 1) + "        " + std::to_string(s.count) +
           (s.count < 10 ? "      " : s.count < 100 ? "     " : "    ") + pct(s.solve_rate) +
           "       " + num(s.mean_iterations_solved) + "        [" + num(s.min_score) +
           ", " + num(s.max_score) + "]\n";
  }
}

}  // namespace

std::string render_report(const BenchmarkReport& report) {
  std::string out;
  out += "targets: " + std::to_string(report.targets) + "\n";
  out += "solve rate: " + pct(report.overall_solve_rate) + "\n";
  out += "mean iterations (solved): " + num(report.mean_iterations_solved) + "\n";
  for (const auto& [n, sr] : report.solve_rate_at)
    out += "SR(N=" + std::to_string(n) + "): " + pct(sr) + "\n";
  out += "tokens: in " + std::to_string(report.total_input_tokens) + " (mean " +
         num(report.mean_input_tokens) + "), out " +
         std::to_string(report.total_output_tokens) + " (mean " +
         num(report.mean_output_tokens) + ")\n";
  if (!report.quartiles.empty())
    render_quartiles(out, "complexity quartiles (Q1 simplest):", report.quartiles);
  if (!report.mw_quartiles.empty())
    render_quartiles(out, "molecular weight quartiles:", report.mw_quartiles);
  return out;
}

}  // namespace retro::harness
