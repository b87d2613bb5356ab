#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gnebench/rng.hpp"
#include "gnebench/spectral.hpp"

namespace gne {

enum class NoiseMode { none, uniform01 };

std::string noise_name(NoiseMode m);
NoiseMode noise_from_name(const std::string& s);

struct ObjectiveSpec {
  std::string function_id;
  int dim = 30;
  Vector lb;
  Vector ub;
  NoiseMode noise = NoiseMode::none;
  Vector shift;  // zero by default; optimum moves by exactly +shift
  std::uint64_t noise_seed = 0;
};

// Base closed form f(x), no shift, no noise.
double eval_raw(const std::string& function_id, const Vector& x);

// f(x - shift) + eta, eta = 0 or a fresh Uniform[0,1) draw from noise_rng.
double evaluate(const ObjectiveSpec& spec, const Vector& x, Rng& noise_rng);

// evaluate with the noise term forced to zero
double true_value(const ObjectiveSpec& spec, const Vector& x);

struct OptimumWitness {
  Vector x_opt;
  double f_opt;
};

// Known optimizer point and value of the (shifted) objective.
OptimumWitness optimum_of(const ObjectiveSpec& spec);

ObjectiveSpec make_objective(const std::string& function_id, int dim = 30);

// The nine benchmark functions at d = 30 with their conventional bounds.
std::vector<ObjectiveSpec> registry();
const std::vector<std::string>& function_names();

// Derives the per-run noise stream seed; mixes the objective's noise_seed with
// the run seed so distinct runs see independent but reproducible noise.
std::uint64_t noise_stream_seed(const ObjectiveSpec& spec, std::uint64_t run_seed);

}  // namespace gne
