#pragma once

#include "gnebench/problem.hpp"
#include "gnebench/trace.hpp"

namespace gne {

struct GneConfig {
  int pop_size = 30;
  int max_iters = 500;
  bool filter_default = true;   // blended low-pass schedule g_t
  FilterSpec filter_fixed;      // used when filter_default is false
  double elite_fraction = 1.0 / 3.0;
  double elite_resample_prob = 0.2;
  double sigma_initial = 0.15;  // fraction of the narrowest box width
  double sigma_final = 1e-9;
  std::uint64_t seed = 0;
};

// Coefficients of g_t(lambda) = (1-beta) + beta*(1-lambda/2)^2 in the
// Chebyshev basis over t = lambda-1; beta = t/T blends exploration into
// exploitation as the run progresses.
FilterSpec default_filter(double beta);

// N x d population drawn uniformly inside the bounds (x-space view).
Matrix init_population(const GneConfig& config, const ObjectiveSpec& objective);

// sigma_t = w * sigma0 * (sigmaT/sigma0)^((t-1)/(T-1)), w = narrowest width.
// t is real-valued so schedule midpoints can be probed directly.
double sigma_schedule(const GneConfig& config, double width_min, double t);

// Indices of the floor(rho*N) (at least 1) smallest fitness values, ties by
// lower index.
std::vector<int> select_elites(const Vector& fitness, double rho);

// One sample of the next generation: per row, with probability p_e a
// Gaussian around a uniformly chosen elite row, otherwise around the
// corresponding filtered row; row 0 is overwritten with best_x; everything
// clamped to [lb, ub].
Matrix phi_sample(const Matrix& filtered, const Matrix& elites, const Vector& best_x,
                  double sigma_t, double p_e, const Vector& lb, const Vector& ub,
                  Rng& rng);

// Whole-run state for step-level testing; populations live in y-space.
struct GneState {
  BoxProblem problem;
  Rng rng;
  Matrix Y;
  Vector fit;
  Vector y_best;
  double f_best = 0.0;
};

GneState gne_init(const GneConfig& config, const ObjectiveSpec& objective);

// Algorithm pipeline for iteration t: adjacency -> normalized Laplacian ->
// eigendecomposition -> spectral filter (mean-centered) -> elite consensus ->
// phi_sample -> evaluate -> best update on strict improvement.
void gne_step(GneState& st, const GneConfig& config, int t);

RunTrace gne_run(const GneConfig& config, const ObjectiveSpec& objective);

}  // namespace gne
