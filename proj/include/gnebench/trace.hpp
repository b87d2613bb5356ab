#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gnebench/objectives.hpp"

namespace gne {

struct IterRecord {
  int iter;            // 0 = post-initialization state
  double best_f;       // best-so-far (noisy belief under noise)
  double mean_f;       // current population fitness mean
  double std_f;        // current population fitness std (divisor N-1)
  long long evals;     // cumulative objective evaluations
};

struct BestRecord {
  Vector x_best;
  double f_best = 0.0;
  long long eval_count = 0;
};

// Shared trace schema across GNE/DE/GA so the harness can aggregate them
// uniformly (the OptimizerInterface contract).
struct RunTrace {
  std::string algo;
  ObjectiveSpec objective;
  std::uint64_t seed = 0;
  int run_id = 0;
  std::vector<IterRecord> iters;
  BestRecord best;
  double true_best = 0.0;  // noise-free readout of x_best
  std::vector<std::pair<std::string, std::string>> meta;  // decision flags
  double wall_ms = 0.0;    // recorded, never written into CSV/JSON artifacts
};

}  // namespace gne
