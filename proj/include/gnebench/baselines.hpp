#pragma once

#include <functional>

#include "gnebench/problem.hpp"
#include "gnebench/trace.hpp"

namespace gne {

struct DeConfig {
  int pop_size = 30;
  int max_iters = 500;
  double scale_factor = 0.5;   // alpha_s
  double crossover_rate = 0.2; // p_cr
  std::uint64_t seed = 0;
};

struct GaConfig {
  int pop_size = 30;
  int max_iters = 500;
  int tournament_size = 3;
  double crossover_prob = 0.9;
  double mutation_prob = 0.15;   // per gene
  double mutation_sigma = 0.15;  // fraction of per-coordinate box width
  std::uint64_t seed = 0;
};

// v = x_r1 + alpha_s * (x_r2 - x_r3), pure arithmetic on given donors.
Vector de_mutant_from(const Vector& x1, const Vector& x2, const Vector& x3,
                      double alpha_s);

// Draws r1, r2, r3 distinct from each other and from i, then combines them.
Vector de_mutate(const Matrix& pop, int i, double alpha_s, Rng& rng);

// Binomial crossover: u_j = v_j if rand <= p_cr or j == j_r, else target_j.
Vector de_crossover(const Vector& target, const Vector& mutant, double p_cr,
                    Rng& rng);

// Greedy selection, trial wins ties.
std::pair<Vector, double> de_select(const Vector& target, const Vector& trial,
                                    double f_target, double f_trial);

// The on_generation hook observes (t, fitness after selection); used by the
// per-individual monotonicity checks.
using GenerationHook = std::function<void(int, const Vector&)>;

RunTrace de_run(const DeConfig& config, const ObjectiveSpec& objective,
                const GenerationHook& on_generation = {});

RunTrace ga_run(const GaConfig& config, const ObjectiveSpec& objective);

}  // namespace gne
