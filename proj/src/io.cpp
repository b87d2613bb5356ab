#include "gnebench/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gne {

namespace {

constexpr char kCsvHeader[] =
    "algo,function,condition,shift,run_id,seed,iter,best_f,mean_f,std_f,evals\n";

double shift_scalar(const ObjectiveSpec& spec) {
  return spec.shift.size() > 0 ? spec.shift[0] : 0.0;
}

}  // namespace

void write_csv(const std::string& path, const std::vector<RunTrace>& traces) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("write_csv: cannot open " + path);
  std::fputs(kCsvHeader, f);
  char line[512];
  for (const RunTrace& tr : traces) {
    const std::string cond = noise_name(tr.objective.noise);
    for (const IterRecord& it : tr.iters) {
      const int n = std::snprintf(
          line, sizeof line,
          "%s,%s,%s,%.17g,%d,%" PRIu64 ",%d,%.17g,%.17g,%.17g,%lld\n",
          tr.algo.c_str(), tr.objective.function_id.c_str(), cond.c_str(),
          shift_scalar(tr.objective), tr.run_id, tr.seed, it.iter, it.best_f,
          it.mean_f, it.std_f, it.evals);
      if (n < 0 || n >= static_cast<int>(sizeof line)) {
        std::fclose(f);
        throw std::runtime_error("write_csv: row formatting failed");
      }
      std::fwrite(line, 1, static_cast<size_t>(n), f);
    }
  }
  if (std::fclose(f) != 0)
    throw std::runtime_error("write_csv: close failed for " + path);
}

std::vector<CsvRecord> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("read_csv: empty file " + path);
  std::string header(kCsvHeader);
  header.pop_back();  // newline
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header)
    throw std::runtime_error("read_csv: unexpected header: " + line);

  std::vector<CsvRecord> records;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) cols.push_back(col);
    if (cols.size() != 11)
      throw std::runtime_error("read_csv: malformed row: " + line);
    CsvRecord r;
    r.algo = cols[0];
    r.function = cols[1];
    r.condition = cols[2];
    r.shift = std::strtod(cols[3].c_str(), nullptr);
    r.run_id = std::atoi(cols[4].c_str());
    r.seed = std::strtoull(cols[5].c_str(), nullptr, 10);
    r.iter = std::atoi(cols[6].c_str());
    r.best_f = std::strtod(cols[7].c_str(), nullptr);
    r.mean_f = std::strtod(cols[8].c_str(), nullptr);
    r.std_f = std::strtod(cols[9].c_str(), nullptr);
    r.evals = std::atoll(cols[10].c_str());
    records.push_back(std::move(r));
  }
  return records;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json cheb_json(const FilterSpec& fs) {
  ordered_json arr = ordered_json::array();
  for (double c : fs.cheb) arr.push_back(c);
  return arr;
}

}  // namespace

std::string json_summary_string(const ExperimentPlan& plan,
                                const ExperimentResult& result) {
  const size_t n_algo = plan.algos.size();
  const size_t n_fn = plan.functions.size();
  const size_t n_cond = plan.conditions.size();
  const auto cell_at = [&](size_t a, size_t f, size_t c) -> const CellSummary& {
    return result.cells.at((a * n_fn + f) * n_cond + c);
  };

  ordered_json meta;
  meta["artifact_version"] = "1.0.0";
  meta["algos"] = plan.algos;
  meta["functions"] = plan.functions;
  meta["dim"] = plan.dim;
  ordered_json conds = ordered_json::array();
  for (const auto& c : plan.conditions) conds.push_back(condition_key(c));
  meta["conditions"] = conds;
  meta["runs_per_cell"] = plan.runs_per_cell;
  meta["base_seed"] = plan.base_seed;
  ordered_json gcfg;
  gcfg["pop_size"] = plan.gne.pop_size;
  gcfg["max_iters"] = plan.gne.max_iters;
  gcfg["elite_fraction"] = plan.gne.elite_fraction;
  gcfg["elite_resample_prob"] = plan.gne.elite_resample_prob;
  gcfg["sigma_initial"] = plan.gne.sigma_initial;
  gcfg["sigma_final"] = plan.gne.sigma_final;
  gcfg["filter"] = plan.gne.filter_default
                       ? ordered_json("default")
                       : cheb_json(plan.gne.filter_fixed);
  gcfg["phi_policy"] = "consensus";
  gcfg["filter_centered"] = true;
  meta["gne"] = gcfg;
  ordered_json dcfg;
  dcfg["pop_size"] = plan.de.pop_size;
  dcfg["max_iters"] = plan.de.max_iters;
  dcfg["scale_factor"] = plan.de.scale_factor;
  dcfg["crossover_rate"] = plan.de.crossover_rate;
  meta["de"] = dcfg;
  ordered_json acfg;
  acfg["pop_size"] = plan.ga.pop_size;
  acfg["max_iters"] = plan.ga.max_iters;
  acfg["tournament_size"] = plan.ga.tournament_size;
  acfg["crossover_prob"] = plan.ga.crossover_prob;
  acfg["mutation_prob"] = plan.ga.mutation_prob;
  acfg["mutation_sigma"] = plan.ga.mutation_sigma;
  meta["ga"] = acfg;

  ordered_json summary;
  for (size_t c = 0; c < n_cond; ++c) {
    const ConditionSpec& cond = plan.conditions[c];
    ordered_json block;
    for (size_t f = 0; f < n_fn; ++f) {
      ordered_json fn_block;
      for (size_t a = 0; a < n_algo; ++a) {
        const CellSummary& cell = cell_at(a, f, c);
        ordered_json stats;
        if (cell.failed) {
          stats["failed"] = true;
          stats["error"] = cell.error;
        } else {
          stats["mean"] = cell.mean;
          stats["std"] = cell.stdev;
          stats["min"] = cell.min_v;
          stats["median"] = cell.median;
          stats["rank"] = cell.rank;
          if (cond.noise != NoiseMode::none) stats["true_mean"] = cell.true_mean;
        }
        fn_block[plan.algos[a]] = std::move(stats);
      }
      block[plan.functions[f]] = std::move(fn_block);
    }
    const ConditionRanks& cr = result.ranks.at(c);
    if (cr.valid) {
      ordered_json mr;
      for (const auto& [name, r] : cr.mean_ranks) mr[name] = r;
      block["_mean_ranks"] = std::move(mr);
      block["_chi2"] = cr.chi2;
    }
    summary[condition_key(cond)] = std::move(block);
  }

  ordered_json root;
  root["meta"] = std::move(meta);
  root["summary"] = std::move(summary);
  return root.dump(2) + "\n";
}

void write_json(const std::string& path, const ExperimentPlan& plan,
                const ExperimentResult& result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_json: cannot open " + path);
  out << json_summary_string(plan, result);
  if (!out) throw std::runtime_error("write_json: write failed for " + path);
}

}  // namespace gne
