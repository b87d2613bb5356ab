#pragma once

#include <string>
#include <vector>

#include "gnebench/baselines.hpp"
#include "gnebench/gne.hpp"
#include "gnebench/stats.hpp"
#include "gnebench/trace.hpp"

namespace gne {

struct ConditionSpec {
  NoiseMode noise = NoiseMode::none;
  double shift = 0.0;  // applied uniformly to every coordinate
};

std::string condition_key(const ConditionSpec& c);

struct ExperimentPlan {
  std::vector<std::string> algos;      // subset of {gne, de, ga}
  std::vector<std::string> functions;  // registry names
  int dim = 30;
  std::vector<ConditionSpec> conditions;
  int runs_per_cell = 30;
  std::uint64_t base_seed = 0;
  GneConfig gne;
  DeConfig de;
  GaConfig ga;
  int threads = 1;
};

struct CellSummary {
  std::string algo;
  std::string function;
  ConditionSpec cond;
  double mean = 0.0;
  double stdev = 0.0;   // divisor R-1
  double min_v = 0.0;
  double median = 0.0;
  double true_mean = 0.0;
  double rank = 0.0;    // Friedman rank within (condition, function)
  double mean_wall_ms = 0.0;
  bool failed = false;
  std::string error;
};

struct ConditionRanks {
  ConditionSpec cond;
  std::vector<std::pair<std::string, double>> mean_ranks;  // per algorithm
  double chi2 = 0.0;
  bool valid = false;
};

struct ExperimentResult {
  std::vector<RunTrace> traces;    // ordered by (algo, function, condition, run)
  std::vector<CellSummary> cells;  // same ordering, one per cell
  std::vector<ConditionRanks> ranks;
  bool any_failed = false;
};

// Executes every (algo, function, condition) cell with seeds
// base_seed..base_seed+R-1, optionally across worker threads; results join
// in deterministic plan order regardless of thread count. A failing cell is
// recorded and the remaining cells still run.
ExperimentResult run_experiment(const ExperimentPlan& plan);

// Builds one optimizer run trace for a cell; seed overrides the config seed.
RunTrace dispatch_run(const ExperimentPlan& plan, const std::string& algo,
                      const ObjectiveSpec& objective, std::uint64_t seed);

ObjectiveSpec objective_for(const ExperimentPlan& plan, const std::string& fn,
                            const ConditionSpec& cond);

}  // namespace gne
