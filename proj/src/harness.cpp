#include "gnebench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

namespace gne {

std::string condition_key(const ConditionSpec& c) {
  std::string key = noise_name(c.noise);
  if (c.shift != 0.0) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "@shift=%g", c.shift);
    key += buf;
  }
  return key;
}

ObjectiveSpec objective_for(const ExperimentPlan& plan, const std::string& fn,
                            const ConditionSpec& cond) {
  ObjectiveSpec spec = make_objective(fn, plan.dim);
  spec.noise = cond.noise;
  if (cond.shift != 0.0) spec.shift = Vector::Constant(plan.dim, cond.shift);
  return spec;
}

RunTrace dispatch_run(const ExperimentPlan& plan, const std::string& algo,
                      const ObjectiveSpec& objective, std::uint64_t seed) {
  if (algo == "gne") {
    GneConfig c = plan.gne;
    c.seed = seed;
    return gne_run(c, objective);
  }
  if (algo == "de") {
    DeConfig c = plan.de;
    c.seed = seed;
    return de_run(c, objective);
  }
  if (algo == "ga") {
    GaConfig c = plan.ga;
    c.seed = seed;
    return ga_run(c, objective);
  }
  throw std::invalid_argument("unknown algorithm: " + algo);
}

namespace {

struct Task {
  size_t cell;
  int run_id;
  std::string algo;
  ObjectiveSpec objective;
  std::uint64_t seed;
};

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentPlan& plan) {
  if (plan.runs_per_cell < 1)
    throw std::invalid_argument("run_experiment: runs_per_cell must be >= 1");
  if (plan.algos.empty() || plan.functions.empty() || plan.conditions.empty())
    throw std::invalid_argument("run_experiment: empty plan");

  ExperimentResult result;
  const int R = plan.runs_per_cell;

  // deterministic cell order: algo, function, condition
  std::vector<Task> tasks;
  for (const auto& algo : plan.algos)
    for (const auto& fn : plan.functions)
      for (const auto& cond : plan.conditions) {
        const size_t cell = result.cells.size();
        CellSummary cs;
        cs.algo = algo;
        cs.function = fn;
        cs.cond = cond;
        result.cells.push_back(cs);
        ObjectiveSpec spec;
        try {
          spec = objective_for(plan, fn, cond);
        } catch (const std::exception& e) {
          result.cells[cell].failed = true;
          result.cells[cell].error = e.what();
          continue;
        }
        for (int r = 0; r < R; ++r)
          tasks.push_back({cell, r, algo, spec,
                           plan.base_seed + static_cast<std::uint64_t>(r)});
      }

  std::vector<std::optional<RunTrace>> slots(tasks.size());
  std::mutex err_mu;
  std::atomic<size_t> cursor{0};
  const auto work = [&]() {
    for (;;) {
      const size_t k = cursor.fetch_add(1);
      if (k >= tasks.size()) return;
      const Task& task = tasks[k];
      try {
        RunTrace tr = dispatch_run(plan, task.algo, task.objective, task.seed);
        tr.run_id = task.run_id;
        slots[k] = std::move(tr);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(err_mu);
        auto& cell = result.cells[task.cell];
        cell.failed = true;
        if (cell.error.empty()) cell.error = e.what();
      }
    }
  };

  const int workers = std::max(1, plan.threads);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  // deterministic join: slot order is task order is plan order
  std::vector<std::vector<const RunTrace*>> per_cell(result.cells.size());
  for (size_t k = 0; k < tasks.size(); ++k) {
    if (!slots[k]) continue;
    if (result.cells[tasks[k].cell].failed) continue;  // drop partial cells
    per_cell[tasks[k].cell].push_back(&*slots[k]);
  }

  for (size_t c = 0; c < result.cells.size(); ++c) {
    auto& cell = result.cells[c];
    if (cell.failed) {
      result.any_failed = true;
      continue;
    }
    const auto& runs = per_cell[c];
    std::vector<double> best, truev, wall;
    for (const RunTrace* tr : runs) {
      best.push_back(tr->best.f_best);
      truev.push_back(tr->true_best);
      wall.push_back(tr->wall_ms);
    }
    const double rn = static_cast<double>(best.size());
    double mean = 0.0;
    for (double v : best) mean += v;
    mean /= rn;
    double var = 0.0;
    for (double v : best) var += (v - mean) * (v - mean);
    cell.mean = mean;
    cell.stdev = best.size() > 1 ? std::sqrt(var / (rn - 1.0)) : 0.0;
    cell.min_v = *std::min_element(best.begin(), best.end());
    cell.median = median_of(best);
    double tm = 0.0;
    for (double v : truev) tm += v;
    cell.true_mean = tm / rn;
    double wm = 0.0;
    for (double v : wall) wm += v;
    cell.mean_wall_ms = wm / rn;
  }

  for (size_t k = 0; k < tasks.size(); ++k)
    if (slots[k] && !result.cells[tasks[k].cell].failed)
      result.traces.push_back(std::move(*slots[k]));

  // Friedman ranks per condition over the (function x algo) mean matrix
  const size_t n_fn = plan.functions.size();
  const size_t n_algo = plan.algos.size();
  const size_t n_cond = plan.conditions.size();
  const auto cell_at = [&](size_t a, size_t f, size_t c) -> CellSummary& {
    return result.cells[(a * n_fn + f) * n_cond + c];
  };
  for (size_t c = 0; c < n_cond; ++c) {
    ConditionRanks cr;
    cr.cond = plan.conditions[c];
    bool usable = n_algo >= 2;
    for (size_t a = 0; a < n_algo && usable; ++a)
      for (size_t f = 0; f < n_fn && usable; ++f)
        usable = !cell_at(a, f, c).failed;
    if (usable) {
      Matrix means(static_cast<int>(n_fn), static_cast<int>(n_algo));
      for (size_t f = 0; f < n_fn; ++f)
        for (size_t a = 0; a < n_algo; ++a)
          means(static_cast<int>(f), static_cast<int>(a)) = cell_at(a, f, c).mean;
      const FriedmanResult fr = friedman_ranks(means);
      for (size_t a = 0; a < n_algo; ++a) {
        cr.mean_ranks.emplace_back(plan.algos[a], fr.mean_ranks[static_cast<int>(a)]);
        for (size_t f = 0; f < n_fn; ++f)
          cell_at(a, f, c).rank = fr.ranks(static_cast<int>(f), static_cast<int>(a));
      }
      cr.chi2 = fr.chi2;
      cr.valid = true;
    }
    result.ranks.push_back(std::move(cr));
  }

  return result;
}

}  // namespace gne
