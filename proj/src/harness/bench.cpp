#include "retro/harness/bench.hpp"

#include <atomic>
#include <thread>

#include "retro/chem/complexity.hpp"
#include "retro/chem/smiles.hpp"
#include "retro/util/hash.hpp"

namespace retro::harness {

RunRecord record_from_result(const chem::MoleculeKey& target,
                             const search::SearchResult& result,
                             const search::ComplexityFn& scorer,
                             bool compute_molecular_weight) {
  RunRecord rec;
  rec.target = target.smiles;
  rec.status = search::to_string(result.status);
  rec.iterations_used = result.iterations_used;
  rec.wall_ms = result.wall_ms;
  rec.input_tokens = result.input_tokens;
  rec.output_tokens = result.output_tokens;
  rec.complexity = scorer(target);
  if (compute_molecular_weight)
    rec.molecular_weight = chem::molecular_weight(chem::parse_smiles(target.smiles));
  if (result.solution)
    rec.route_length = search::route_length(*result.solution);
  return rec;
}

std::vector<RunRecord> run_benchmark(const std::vector<chem::MoleculeKey>& targets,
                                     const search::SearchDeps& deps,
                                     const BenchOptions& options) {
  if (options.parallelism < 1)
    throw std::invalid_argument("parallelism must be >= 1");

  std::vector<RunRecord> records(targets.size());
  std::atomic<std::size_t> cursor{0};

  auto scorer = deps.scorer ? deps.scorer : search::default_scorer();

  auto worker = [&] {
    while (true) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= targets.size())
        return;
      search::SearchConfig config = options.config;
      config.seed = hash_combine(options.config.seed, static_cast<std::uint64_t>(i));
      search::SearchDeps local = deps;
      if (options.deterministic_timing) {
        auto counter = std::make_shared<double>(0.0);
        local.clock = [counter] { return (*counter)++; };
      }
      try {
        auto result = search::run(targets[i], local, config);
        records[i] = record_from_result(targets[i], result, scorer,
                                        options.compute_molecular_weight);
      } catch (const std::exception& e) {
        records[i].target = targets[i].smiles;
        records[i].status = "error";
        records[i].error = e.what();
      }
    }
  };

  int n_threads = std::min<int>(options.parallelism, static_cast<int>(targets.size()));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i)
      threads.emplace_back(worker);
    for (auto& t : threads)
      t.join();
  }
  return records;
}

}  // namespace retro::harness
