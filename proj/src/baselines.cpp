#include "gnebench/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace gne {

namespace {

void record_iter(RunTrace& trace, int iter, const Vector& fit, double f_best,
                 long long evals) {
  const int n = static_cast<int>(fit.size());
  const double mean = fit.mean();
  double var = 0.0;
  for (int i = 0; i < n; ++i) var += (fit[i] - mean) * (fit[i] - mean);
  var = n > 1 ? var / (n - 1) : 0.0;
  trace.iters.push_back({iter, f_best, mean, std::sqrt(var), evals});
}

Matrix init_y(int n, const Vector& ylb, const Vector& yub, Rng& rng) {
  const int d = static_cast<int>(ylb.size());
  Matrix y(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j)
      y(i, j) = ylb[j] + rng.unif01() * (yub[j] - ylb[j]);
  return y;
}

Vector clamped(Vector v, const Vector& lb, const Vector& ub) {
  for (int j = 0; j < v.size(); ++j) v[j] = std::clamp(v[j], lb[j], ub[j]);
  return v;
}

}  // namespace

Vector de_mutant_from(const Vector& x1, const Vector& x2, const Vector& x3,
                      double alpha_s) {
  return x1 + alpha_s * (x2 - x3);
}

Vector de_mutate(const Matrix& pop, int i, double alpha_s, Rng& rng) {
  const int n = static_cast<int>(pop.rows());
  if (n < 4) throw std::invalid_argument("de_mutate: need pop_size >= 4");
  const auto draw_not = [&](std::initializer_list<int> taboo) {
    for (;;) {
      const int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      bool clash = false;
      for (int t : taboo) clash |= (r == t);
      if (!clash) return r;
    }
  };
  const int r1 = draw_not({i});
  const int r2 = draw_not({i, r1});
  const int r3 = draw_not({i, r1, r2});
  return de_mutant_from(pop.row(r1), pop.row(r2), pop.row(r3), alpha_s);
}

Vector de_crossover(const Vector& target, const Vector& mutant, double p_cr,
                    Rng& rng) {
  const int d = static_cast<int>(target.size());
  if (mutant.size() != d)
    throw std::invalid_argument("de_crossover: dimension mismatch");
  const int jr = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
  Vector u(d);
  for (int j = 0; j < d; ++j) {
    const bool from_mutant = rng.unif01() <= p_cr || j == jr;
    u[j] = from_mutant ? mutant[j] : target[j];
  }
  return u;
}

std::pair<Vector, double> de_select(const Vector& target, const Vector& trial,
                                    double f_target, double f_trial) {
  if (!std::isfinite(f_target) || !std::isfinite(f_trial))
    throw std::invalid_argument("de_select: non-finite fitness");
  if (f_trial <= f_target) return {trial, f_trial};
  return {target, f_target};
}

RunTrace de_run(const DeConfig& config, const ObjectiveSpec& objective,
                const GenerationHook& on_generation) {
  if (config.pop_size < 4) throw std::invalid_argument("de_run: pop_size must be >= 4");
  if (config.max_iters < 1) throw std::invalid_argument("de_run: max_iters must be >= 1");
  if (!(config.scale_factor > 0.0))
    throw std::invalid_argument("de_run: scale_factor must be > 0");
  if (!(config.crossover_rate >= 0.0 && config.crossover_rate <= 1.0))
    throw std::invalid_argument("de_run: crossover_rate must be in [0,1]");

  const auto t0 = std::chrono::steady_clock::now();
  const int n = config.pop_size;
  BoxProblem prob(objective, config.seed);
  Rng rng(config.seed);

  Matrix y = init_y(n, prob.ylb(), prob.yub(), rng);
  Vector fit(n);
  for (int i = 0; i < n; ++i) fit[i] = prob.eval_y(y.row(i));
  int ib = 0;
  for (int i = 1; i < n; ++i)
    if (fit[i] < fit[ib]) ib = i;
  Vector y_best = y.row(ib);
  double f_best = fit[ib];

  RunTrace trace;
  trace.algo = "de";
  trace.objective = objective;
  trace.seed = config.seed;
  record_iter(trace, 0, fit, f_best, prob.evals());

  Matrix next(n, y.cols());
  Vector next_fit(n);
  for (int t = 1; t <= config.max_iters; ++t) {
    for (int i = 0; i < n; ++i) {
      // donors come from the previous generation (classic generational form)
      Vector v = clamped(de_mutate(y, i, config.scale_factor, rng),
                         prob.ylb(), prob.yub());
      Vector u = de_crossover(y.row(i), v, config.crossover_rate, rng);
      const double fu = prob.eval_y(u);
      auto [winner, fw] = de_select(y.row(i), u, fit[i], fu);
      next.row(i) = winner;
      next_fit[i] = fw;
      if (fw < f_best) {
        f_best = fw;
        y_best = winner;
      }
    }
    y.swap(next);
    fit.swap(next_fit);
    if (on_generation) on_generation(t, fit);
    record_iter(trace, t, fit, f_best, prob.evals());
  }

  trace.best.x_best = prob.to_x(y_best);
  trace.best.f_best = f_best;
  trace.best.eval_count = prob.evals();
  trace.true_best = prob.true_of_y(y_best);
  trace.meta = {
      {"variant", "rand/1/bin"},
      {"boundary", "clamp"},
      {"coords", "box_centered"},
  };
  trace.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return trace;
}

RunTrace ga_run(const GaConfig& config, const ObjectiveSpec& objective) {
  if (config.pop_size < 2) throw std::invalid_argument("ga_run: pop_size must be >= 2");
  if (config.max_iters < 1) throw std::invalid_argument("ga_run: max_iters must be >= 1");
  if (config.tournament_size < 2)
    throw std::invalid_argument("ga_run: tournament_size must be >= 2");
  for (double p : {config.crossover_prob, config.mutation_prob}) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("ga_run: probabilities must be in [0,1]");
  }

  const auto t0 = std::chrono::steady_clock::now();
  const int n = config.pop_size;
  BoxProblem prob(objective, config.seed);
  Rng rng(config.seed);
  const Vector width = prob.yub() - prob.ylb();

  Matrix y = init_y(n, prob.ylb(), prob.yub(), rng);
  Vector fit(n);
  for (int i = 0; i < n; ++i) fit[i] = prob.eval_y(y.row(i));
  int ib = 0;
  for (int i = 1; i < n; ++i)
    if (fit[i] < fit[ib]) ib = i;
  Vector y_best = y.row(ib);
  double f_best = fit[ib];

  RunTrace trace;
  trace.algo = "ga";
  trace.objective = objective;
  trace.seed = config.seed;
  record_iter(trace, 0, fit, f_best, prob.evals());

  const auto tournament = [&]() {
    int best = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    for (int k = 1; k < config.tournament_size; ++k) {
      const int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      if (fit[c] < fit[best]) best = c;  // first-drawn keeps ties
    }
    return best;
  };

  Matrix next(n, y.cols());
  const int d = static_cast<int>(y.cols());
  for (int t = 1; t <= config.max_iters; ++t) {
    int cur_best = 0;
    for (int i = 1; i < n; ++i)
      if (fit[i] < fit[cur_best]) cur_best = i;
    next.row(0) = y.row(cur_best);  // 1-elitism

    for (int i = 1; i < n; ++i) {
      const int p1 = tournament();
      const int p2 = tournament();
      Vector child(d);
      if (rng.unif01() < config.crossover_prob) {
        for (int j = 0; j < d; ++j)
          child[j] = rng.unif01() < 0.5 ? y(p1, j) : y(p2, j);
      } else {
        child = y.row(p1);
      }
      for (int j = 0; j < d; ++j) {
        if (rng.unif01() < config.mutation_prob)
          child[j] += config.mutation_sigma * width[j] * rng.normal();
      }
      next.row(i) = clamped(std::move(child), prob.ylb(), prob.yub());
    }

    y = next;
    for (int i = 0; i < n; ++i) fit[i] = prob.eval_y(y.row(i));
    int gb = 0;
    for (int i = 1; i < n; ++i)
      if (fit[i] < fit[gb]) gb = i;
    if (fit[gb] < f_best) {
      f_best = fit[gb];
      y_best = y.row(gb);
    }
    record_iter(trace, t, fit, f_best, prob.evals());
  }

  trace.best.x_best = prob.to_x(y_best);
  trace.best.f_best = f_best;
  trace.best.eval_count = prob.evals();
  trace.true_best = prob.true_of_y(y_best);
  trace.meta = {
      {"operators", "tournament3+uniform_crossover+gauss_mutation+1elitism"},
      {"boundary", "clamp"},
      {"coords", "box_centered"},
  };
  trace.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return trace;
}

}  // namespace gne
