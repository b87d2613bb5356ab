#pragma once

#include <string>
#include <vector>

#include "gnebench/harness.hpp"

namespace gne {

// CSV schema (stable): algo,function,condition,shift,run_id,seed,iter,
// best_f,mean_f,std_f,evals. Floats printed as %.17g; no timestamps, so
// identical plans and seeds reproduce the file byte for byte.
void write_csv(const std::string& path, const std::vector<RunTrace>& traces);

struct CsvRecord {
  std::string algo;
  std::string function;
  std::string condition;
  double shift;
  int run_id;
  std::uint64_t seed;
  int iter;
  double best_f;
  double mean_f;
  double std_f;
  long long evals;
};

std::vector<CsvRecord> read_csv(const std::string& path);

// JSON summary: {condition -> function -> algo -> stats} plus per-condition
// Friedman mean ranks and a meta block echoing config and decision flags.
void write_json(const std::string& path, const ExperimentPlan& plan,
                const ExperimentResult& result);

std::string json_summary_string(const ExperimentPlan& plan,
                                const ExperimentResult& result);

}  // namespace gne
