#include "gnebench/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>
#include <stdexcept>
#include <tuple>

#include <CLI11.hpp>

#include "gnebench/io.hpp"

namespace gne {

namespace {

struct RawOpts {
  std::string algo;
  std::string fn = "all";
  int dim = 30;
  int pop = GneConfig{}.pop_size;
  int iters = GneConfig{}.max_iters;
  int runs = 30;
  std::uint64_t seed = 0;
  std::string noise;  // empty = mode default
  double shift = 0.0;
  std::string filter = "default";
  double sigma0 = GneConfig{}.sigma_initial;
  double sigmaT = GneConfig{}.sigma_final;
  double elite_frac = GneConfig{}.elite_fraction;
  double elite_prob = GneConfig{}.elite_resample_prob;
  std::string out;
  std::string format = "csv";
  int threads = 1;
  std::string ranks_input;
};

void add_common_flags(CLI::App* cmd, RawOpts& raw) {
  cmd->add_option("--fn", raw.fn, "benchmark function name, or 'all'");
  cmd->add_option("--dim", raw.dim, "problem dimension")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--pop", raw.pop, "population size N")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--iters", raw.iters, "iteration budget T")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--runs", raw.runs, "independent runs per cell")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", raw.seed, "base seed; run r uses seed base+r");
  cmd->add_option("--noise", raw.noise, "noise condition")
      ->check(CLI::IsMember({"none", "uniform01"}));
  cmd->add_option("--shift", raw.shift, "optimum shift applied to every coordinate");
  cmd->add_option("--filter", raw.filter,
                  "'default' or 'cheb:c0,c1,...' (Chebyshev over lambda-1)");
  cmd->add_option("--sigma0", raw.sigma0, "initial sampling spread (fraction of width)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--sigmaT", raw.sigmaT, "final sampling spread (fraction of width)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--elite-frac", raw.elite_frac, "elite fraction rho");
  cmd->add_option("--elite-prob", raw.elite_prob, "elite resampling probability p_e");
  cmd->add_option("--out", raw.out,
                  "output path; with --format both, '.csv'/'.json' are appended");
  cmd->add_option("--format", raw.format, "output file format")
      ->check(CLI::IsMember({"csv", "json", "both"}));
  cmd->add_option("--threads", raw.threads, "worker threads (results stay deterministic)")
      ->check(CLI::PositiveNumber);
}

void parse_filter_string(const std::string& s, GneConfig& cfg) {
  if (s == "default") {
    cfg.filter_default = true;
    return;
  }
  const std::string prefix = "cheb:";
  if (s.rfind(prefix, 0) != 0)
    throw CLI::ValidationError("--filter", "expected 'default' or 'cheb:c0,c1,...'");
  std::vector<double> coeffs;
  std::string rest = s.substr(prefix.size());
  size_t pos = 0;
  while (pos <= rest.size()) {
    const size_t comma = rest.find(',', pos);
    const std::string tok =
        rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      size_t used = 0;
      coeffs.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--filter", "bad coefficient '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (coeffs.empty())
    throw CLI::ValidationError("--filter", "needs at least one coefficient");
  cfg.filter_default = false;
  cfg.filter_fixed.cheb = std::move(coeffs);
}

void require_known_function(const std::string& fn) {
  const auto& names = function_names();
  if (std::find(names.begin(), names.end(), fn) == names.end())
    throw CLI::ValidationError("--fn", "unknown function '" + fn + "'");
}

CliOptions finalize(const std::string& mode, const RawOpts& raw) {
  CliOptions opt;
  opt.mode = mode;
  opt.out_path = raw.out;
  opt.format = raw.format;
  if (mode == "ranks") {
    opt.ranks_input = raw.ranks_input;
    return opt;
  }

  ExperimentPlan& plan = opt.plan;
  plan.dim = raw.dim;
  plan.runs_per_cell = raw.runs;
  plan.base_seed = raw.seed;
  plan.threads = raw.threads;

  plan.gne.pop_size = raw.pop;
  plan.gne.max_iters = raw.iters;
  plan.gne.sigma_initial = raw.sigma0;
  plan.gne.sigma_final = raw.sigmaT;
  plan.gne.elite_fraction = raw.elite_frac;
  plan.gne.elite_resample_prob = raw.elite_prob;
  parse_filter_string(raw.filter, plan.gne);
  plan.de.pop_size = raw.pop;
  plan.de.max_iters = raw.iters;
  plan.ga.pop_size = raw.pop;
  plan.ga.max_iters = raw.iters;

  if (mode == "run") {
    if (raw.algo.empty()) throw CLI::ValidationError("--algo", "required for run");
    plan.algos = {raw.algo};
    if (raw.fn == "all")
      throw CLI::ValidationError("--fn", "run takes a single function; use compare for sweeps");
    require_known_function(raw.fn);
    plan.functions = {raw.fn};
    ConditionSpec cond;
    cond.noise = raw.noise.empty() ? NoiseMode::none : noise_from_name(raw.noise);
    cond.shift = raw.shift;
    plan.conditions = {cond};
  } else {  // compare
    plan.algos = raw.algo.empty() ? std::vector<std::string>{"gne", "de", "ga"}
                                  : std::vector<std::string>{raw.algo};
    if (raw.fn == "all") {
      plan.functions = function_names();
    } else {
      require_known_function(raw.fn);
      plan.functions = {raw.fn};
    }
    if (raw.noise.empty()) {
      plan.conditions = {{NoiseMode::none, raw.shift},
                         {NoiseMode::uniform01, raw.shift}};
    } else {
      plan.conditions = {{noise_from_name(raw.noise), raw.shift}};
    }
  }

  const bool has_de = std::find(plan.algos.begin(), plan.algos.end(), "de") !=
                      plan.algos.end();
  if (has_de && raw.pop < 4)
    throw CLI::ValidationError("--pop", "de needs a population of at least 4");
  if (raw.pop < 2)
    throw CLI::ValidationError("--pop", "population must be at least 2");
  return opt;
}

std::unique_ptr<CLI::App> build_app(RawOpts& raw, std::string& mode) {
  auto app = std::make_unique<CLI::App>(
      "gnebench: spectral-filtered evolution and baselines on box-bounded benchmarks");
  app->require_subcommand(1);

  CLI::App* run = app->add_subcommand("run", "one algorithm on one function");
  run->add_option("--algo", raw.algo, "algorithm")
      ->required()
      ->check(CLI::IsMember({"gne", "de", "ga"}));
  add_common_flags(run, raw);
  run->callback([&mode]() { mode = "run"; });

  CLI::App* cmp = app->add_subcommand("compare", "full benchmark sweep");
  cmp->add_option("--algo", raw.algo, "restrict to one algorithm")
      ->check(CLI::IsMember({"gne", "de", "ga"}));
  add_common_flags(cmp, raw);
  cmp->callback([&mode]() { mode = "compare"; });

  CLI::App* ranks = app->add_subcommand("ranks", "recompute Friedman ranks from a results CSV");
  ranks->add_option("input", raw.ranks_input, "results CSV path")->required();
  ranks->callback([&mode]() { mode = "ranks"; });

  return app;
}

void parse_args(CLI::App& app, const std::vector<std::string>& args) {
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  app.parse(reversed);
}

void print_summary(std::ostream& out, const ExperimentPlan& plan,
                   const ExperimentResult& result) {
  const size_t n_algo = plan.algos.size();
  const size_t n_fn = plan.functions.size();
  const size_t n_cond = plan.conditions.size();
  const auto cell_at = [&](size_t a, size_t f, size_t c) -> const CellSummary& {
    return result.cells.at((a * n_fn + f) * n_cond + c);
  };
  char line[256];
  for (size_t c = 0; c < n_cond; ++c) {
    out << "condition: " << condition_key(plan.conditions[c]) << "\n";
    std::snprintf(line, sizeof line, "  %-14s %-5s %13s %13s %13s %13s %6s %9s\n",
                  "function", "algo", "mean", "std", "min", "median", "rank",
                  "ms/run");
    out << line;
    for (size_t f = 0; f < n_fn; ++f)
      for (size_t a = 0; a < n_algo; ++a) {
        const CellSummary& cell = cell_at(a, f, c);
        if (cell.failed) {
          std::snprintf(line, sizeof line, "  %-14s %-5s FAILED: %s\n",
                        cell.function.c_str(), cell.algo.c_str(),
                        cell.error.c_str());
        } else {
          std::snprintf(line, sizeof line,
                        "  %-14s %-5s %13.6g %13.6g %13.6g %13.6g %6.2f %9.1f\n",
                        cell.function.c_str(), cell.algo.c_str(), cell.mean,
                        cell.stdev, cell.min_v, cell.median, cell.rank,
                        cell.mean_wall_ms);
        }
        out << line;
      }
    const ConditionRanks& cr = result.ranks.at(c);
    if (cr.valid) {
      out << "  mean ranks:";
      for (const auto& [name, r] : cr.mean_ranks) {
        std::snprintf(line, sizeof line, " %s=%.4g", name.c_str(), r);
        out << line;
      }
      std::snprintf(line, sizeof line, "  chi2=%.6g\n", cr.chi2);
      out << line;
    }
  }
}

int exec_plan(const CliOptions& opt, std::ostream& out) {
  const ExperimentResult result = run_experiment(opt.plan);
  print_summary(out, opt.plan, result);
  if (!opt.out_path.empty()) {
    if (opt.format == "csv") {
      write_csv(opt.out_path, result.traces);
      out << "wrote " << opt.out_path << "\n";
    } else if (opt.format == "json") {
      write_json(opt.out_path, opt.plan, result);
      out << "wrote " << opt.out_path << "\n";
    } else {
      write_csv(opt.out_path + ".csv", result.traces);
      write_json(opt.out_path + ".json", opt.plan, result);
      out << "wrote " << opt.out_path << ".csv and " << opt.out_path << ".json\n";
    }
  }
  return result.any_failed ? 2 : 0;
}

int exec_ranks(const CliOptions& opt, std::ostream& out) {
  const std::vector<CsvRecord> records = read_csv(opt.ranks_input);
  if (records.empty())
    throw std::runtime_error("ranks: no data rows in " + opt.ranks_input);

  // condition label -> (functions, algos) in first-appearance order, plus the
  // final-iteration best per run
  std::vector<std::string> cond_keys;
  std::map<std::string, std::vector<std::string>> fns, algos;
  using RunKey = std::tuple<std::string, std::string, std::string, int>;
  std::map<RunKey, std::pair<int, double>> final_best;  // iter, best_f
  const auto label_of = [](const CsvRecord& r) {
    std::string key = r.condition;
    if (r.shift != 0.0) {
      char buf[48];
      std::snprintf(buf, sizeof buf, "@shift=%g", r.shift);
      key += buf;
    }
    return key;
  };
  const auto note = [](std::vector<std::string>& v, const std::string& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
  };
  for (const CsvRecord& r : records) {
    const std::string key = label_of(r);
    if (std::find(cond_keys.begin(), cond_keys.end(), key) == cond_keys.end())
      cond_keys.push_back(key);
    note(fns[key], r.function);
    note(algos[key], r.algo);
    const RunKey rk{key, r.function, r.algo, r.run_id};
    const auto it = final_best.find(rk);
    if (it == final_best.end() || it->second.first <= r.iter)
      final_best[rk] = {r.iter, r.best_f};
  }

  char line[256];
  for (const std::string& key : cond_keys) {
    const auto& fn_list = fns[key];
    const auto& algo_list = algos[key];
    if (algo_list.size() < 2)
      throw std::runtime_error("ranks: need at least two algorithms per condition");
    Matrix means(static_cast<int>(fn_list.size()), static_cast<int>(algo_list.size()));
    for (size_t f = 0; f < fn_list.size(); ++f)
      for (size_t a = 0; a < algo_list.size(); ++a) {
        double sum = 0.0;
        int count = 0;
        for (const auto& [k, v] : final_best)
          if (std::get<0>(k) == key && std::get<1>(k) == fn_list[f] &&
              std::get<2>(k) == algo_list[a]) {
            sum += v.second;
            ++count;
          }
        if (count == 0)
          throw std::runtime_error("ranks: incomplete grid for " + key + "/" +
                                   fn_list[f] + "/" + algo_list[a]);
        means(static_cast<int>(f), static_cast<int>(a)) = sum / count;
      }
    const FriedmanResult fr = friedman_ranks(means);
    out << "condition: " << key << "\n  mean ranks:";
    for (size_t a = 0; a < algo_list.size(); ++a) {
      std::snprintf(line, sizeof line, " %s=%.4g", algo_list[a].c_str(),
                    fr.mean_ranks[static_cast<int>(a)]);
      out << line;
    }
    std::snprintf(line, sizeof line, "  chi2=%.6g\n", fr.chi2);
    out << line;
  }
  return 0;
}

}  // namespace

CliOptions cli_parse(const std::vector<std::string>& args) {
  RawOpts raw;
  std::string mode;
  auto app = build_app(raw, mode);
  try {
    parse_args(*app, args);
    return finalize(mode, raw);
  } catch (const CLI::ParseError& e) {
    throw std::invalid_argument(e.what());
  }
}

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  RawOpts raw;
  std::string mode;
  auto app = build_app(raw, mode);
  CliOptions opt;
  try {
    parse_args(*app, args);
    opt = finalize(mode, raw);
  } catch (const CLI::CallForHelp&) {
    out << app->help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app->help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n"
        << "run with --help for usage\n";
    return 1;
  }
  try {
    if (opt.mode == "ranks") return exec_ranks(opt, out);
    return exec_plan(opt, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int cli_main(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace gne
