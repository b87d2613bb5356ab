#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "gnebench/cli.hpp"
#include "gnebench/io.hpp"

using namespace gne;

namespace {

std::string tmp_path(const std::string& stem) {
  return "/tmp/gnebench_test_" + stem;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentPlan tiny_plan() {
  ExperimentPlan plan;
  plan.algos = {"de"};
  plan.functions = {"sphere"};
  plan.dim = 2;
  plan.conditions = {{NoiseMode::none, 0.0}};
  plan.runs_per_cell = 2;
  plan.base_seed = 5;
  plan.de.pop_size = 8;
  plan.de.max_iters = 20;
  return plan;
}

}  // namespace

TEST_CASE("friedman ranks: worked example") {
  Matrix means(2, 3);
  means << 1, 2, 3, 2, 1, 3;
  const FriedmanResult fr = friedman_ranks(means);
  CHECK(fr.ranks(0, 0) == 1.0);
  CHECK(fr.ranks(0, 1) == 2.0);
  CHECK(fr.ranks(0, 2) == 3.0);
  CHECK(fr.ranks(1, 0) == 2.0);
  CHECK(fr.ranks(1, 1) == 1.0);
  CHECK(fr.mean_ranks[0] == 1.5);
  CHECK(fr.mean_ranks[1] == 1.5);
  CHECK(fr.mean_ranks[2] == 3.0);
  CHECK(fr.chi2 == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("friedman ranks: degenerate shapes") {
  SUBCASE("a uniformly dominant column gets rank one everywhere") {
    Matrix means(4, 3);
    means << 0, 5, 9, 1, 7, 8, 2, 9, 9, 0, 3, 4;
    const FriedmanResult fr = friedman_ranks(means);
    CHECK(fr.mean_ranks[0] == 1.0);
    for (int r = 0; r < 4; ++r) CHECK(fr.ranks(r, 0) == 1.0);
  }
  SUBCASE("all-equal rows tie at (m+1)/2 and the statistic vanishes") {
    Matrix means = Matrix::Constant(3, 4, 7.0);
    const FriedmanResult fr = friedman_ranks(means);
    for (int j = 0; j < 4; ++j) CHECK(fr.mean_ranks[j] == 2.5);
    CHECK(fr.chi2 == 0.0);
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(friedman_ranks(Matrix(0, 3)), std::invalid_argument);
    CHECK_THROWS_AS(friedman_ranks(Matrix::Zero(3, 1)), std::invalid_argument);
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 0) = std::nan("");
    CHECK_THROWS_AS(friedman_ranks(bad), std::invalid_argument);
  }
}

TEST_CASE("friedman ranks agree with the counting definition") {
  // closed form: rank = #{strictly smaller} + (#{equal} + 1) / 2
  Rng rng(61);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 1 + int(rng.below(5));
    const int m = 2 + int(rng.below(4));
    Matrix means(n, m);
    for (int r = 0; r < n; ++r)
      for (int j = 0; j < m; ++j) means(r, j) = double(rng.below(4));  // ties likely

    const FriedmanResult fr = friedman_ranks(means);
    for (int r = 0; r < n; ++r)
      for (int j = 0; j < m; ++j) {
        int smaller = 0, equal = 0;
        for (int k = 0; k < m; ++k) {
          smaller += means(r, k) < means(r, j);
          equal += means(r, k) == means(r, j);
        }
        CHECK(fr.ranks(r, j) == smaller + 0.5 * (equal + 1));
      }
    // every row's ranks must sum to m(m+1)/2 whatever the ties
    for (int r = 0; r < n; ++r)
      CHECK(fr.ranks.row(r).sum() == doctest::Approx(m * (m + 1) / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("condition keys") {
  CHECK(condition_key({NoiseMode::none, 0.0}) == "none");
  CHECK(condition_key({NoiseMode::uniform01, 0.0}) == "uniform01");
  CHECK(condition_key({NoiseMode::none, -50.0}) == "none@shift=-50");
  CHECK(condition_key({NoiseMode::uniform01, 12.5}) == "uniform01@shift=12.5");
}

TEST_CASE("objective_for applies the condition to the objective") {
  ExperimentPlan plan = tiny_plan();
  plan.dim = 3;
  const ObjectiveSpec a = objective_for(plan, "sphere", {NoiseMode::uniform01, -4.0});
  CHECK(a.noise == NoiseMode::uniform01);
  CHECK(a.dim == 3);
  CHECK(a.shift.size() == 3);
  CHECK(a.shift[0] == -4.0);

  const ObjectiveSpec b = objective_for(plan, "sphere", {NoiseMode::none, 0.0});
  CHECK(b.noise == NoiseMode::none);
  CHECK(b.shift.isZero(0.0));
}

TEST_CASE("dispatch_run overrides the seed and rejects unknown algos") {
  ExperimentPlan plan = tiny_plan();
  plan.gne.pop_size = 6;
  plan.gne.max_iters = 5;
  const ObjectiveSpec spec = make_objective("sphere", 2);

  const RunTrace a = dispatch_run(plan, "gne", spec, 123);
  CHECK(a.seed == 123);
  CHECK(a.algo == "gne");
  const RunTrace b = dispatch_run(plan, "de", spec, 9);
  CHECK(b.seed == 9);
  CHECK_THROWS_AS(dispatch_run(plan, "pso", spec, 0), std::invalid_argument);
}

TEST_CASE("run_experiment on a single cell") {
  const ExperimentPlan plan = tiny_plan();
  const ExperimentResult res = run_experiment(plan);

  REQUIRE(res.traces.size() == 2);
  REQUIRE(res.cells.size() == 1);
  CHECK(!res.any_failed);
  CHECK(res.traces[0].seed == 5);
  CHECK(res.traces[1].seed == 6);
  CHECK(res.traces[0].run_id == 0);
  CHECK(res.traces[1].run_id == 1);

  const double f0 = res.traces[0].best.f_best;
  const double f1 = res.traces[1].best.f_best;
  const CellSummary& cell = res.cells[0];
  CHECK(cell.mean == doctest::Approx(0.5 * (f0 + f1)).epsilon(1e-15));
  CHECK(cell.min_v == std::min(f0, f1));
  CHECK(cell.median == doctest::Approx(0.5 * (f0 + f1)).epsilon(1e-15));
  const double mu = 0.5 * (f0 + f1);
  const double sd = std::sqrt((f0 - mu) * (f0 - mu) + (f1 - mu) * (f1 - mu));
  CHECK(cell.stdev == doctest::Approx(sd).epsilon(1e-12).scale(1e-300));
  // single algorithm: no ranking possible
  REQUIRE(res.ranks.size() == 1);
  CHECK(!res.ranks[0].valid);
}

TEST_CASE("run_experiment shares seeds across algorithms and ranks cells") {
  ExperimentPlan plan = tiny_plan();
  plan.algos = {"gne", "de", "ga"};
  plan.functions = {"sphere", "rastrigin"};
  plan.runs_per_cell = 3;
  plan.base_seed = 11;
  plan.gne.pop_size = 6;
  plan.gne.max_iters = 8;
  plan.de.pop_size = 6;
  plan.de.max_iters = 8;
  plan.ga.pop_size = 6;
  plan.ga.max_iters = 8;

  const ExperimentResult res = run_experiment(plan);
  REQUIRE(res.traces.size() == 3 * 2 * 3);
  REQUIRE(res.cells.size() == 6);
  for (const RunTrace& tr : res.traces)
    CHECK(tr.seed == 11 + std::uint64_t(tr.run_id));

  REQUIRE(res.ranks.size() == 1);
  CHECK(res.ranks[0].valid);
  REQUIRE(res.ranks[0].mean_ranks.size() == 3);
  double total = 0.0;
  for (const auto& [name, r] : res.ranks[0].mean_ranks) {
    CHECK(r >= 1.0);
    CHECK(r <= 3.0);
    total += r;
  }
  CHECK(total == doctest::Approx(6.0).epsilon(1e-12));  // m(m+1)/2

  // per-cell rank echoes the Friedman table
  for (const CellSummary& cell : res.cells) {
    CHECK(cell.rank >= 1.0);
    CHECK(cell.rank <= 3.0);
  }
}

TEST_CASE("run_experiment records a failing cell and keeps going") {
  ExperimentPlan plan = tiny_plan();
  plan.algos = {"de", "ga"};
  plan.functions = {"sphere", "warp_drive"};
  plan.ga.pop_size = 8;
  plan.ga.max_iters = 20;

  const ExperimentResult res = run_experiment(plan);
  CHECK(res.any_failed);
  REQUIRE(res.cells.size() == 4);
  int failed = 0;
  for (const CellSummary& cell : res.cells) {
    if (cell.function == "warp_drive") {
      CHECK(cell.failed);
      CHECK(!cell.error.empty());
      ++failed;
    } else {
      CHECK(!cell.failed);
    }
  }
  CHECK(failed == 2);
  CHECK(res.traces.size() == 4);  // two healthy cells, two runs each
  CHECK(!res.ranks[0].valid);     // incomplete grid: no ranking claimed
}

TEST_CASE("run_experiment is deterministic across thread counts") {
  ExperimentPlan plan = tiny_plan();
  plan.algos = {"gne", "de"};
  plan.runs_per_cell = 3;
  plan.gne.pop_size = 6;
  plan.gne.max_iters = 10;
  plan.de.pop_size = 6;
  plan.de.max_iters = 10;

  plan.threads = 1;
  const ExperimentResult a = run_experiment(plan);
  plan.threads = 3;
  const ExperimentResult b = run_experiment(plan);

  const std::string pa = tmp_path("threads_a.csv");
  const std::string pb = tmp_path("threads_b.csv");
  write_csv(pa, a.traces);
  write_csv(pb, b.traces);
  CHECK(slurp(pa) == slurp(pb));
  std::remove(pa.c_str());
  std::remove(pb.c_str());
}

TEST_CASE("csv round trip") {
  SUBCASE("no traces still writes the header") {
    const std::string path = tmp_path("empty.csv");
    write_csv(path, {});
    CHECK(slurp(path) ==
          "algo,function,condition,shift,run_id,seed,iter,best_f,mean_f,std_f,evals\n");
    CHECK(read_csv(path).empty());
    std::remove(path.c_str());
  }
  SUBCASE("records survive and recompute the cell mean") {
    const ExperimentPlan plan = tiny_plan();
    const ExperimentResult res = run_experiment(plan);
    const std::string path = tmp_path("roundtrip.csv");
    write_csv(path, res.traces);

    const std::vector<CsvRecord> records = read_csv(path);
    REQUIRE(records.size() == res.traces.size() * res.traces[0].iters.size());
    CHECK(records[0].algo == "de");
    CHECK(records[0].function == "sphere");
    CHECK(records[0].condition == "none");
    CHECK(records[0].iter == 0);

    double sum = 0.0;
    int count = 0;
    for (const CsvRecord& r : records)
      if (r.iter == plan.de.max_iters) {
        sum += r.best_f;
        ++count;
      }
    REQUIRE(count == 2);
    CHECK(sum / count == doctest::Approx(res.cells[0].mean).epsilon(1e-15));
    std::remove(path.c_str());
  }
  SUBCASE("missing file and header mismatch are errors") {
    CHECK_THROWS_AS(read_csv("/tmp/gnebench_definitely_absent.csv"),
                    std::runtime_error);
    const std::string path = tmp_path("badheader.csv");
    std::ofstream(path) << "wrong,header\n1,2\n";
    CHECK_THROWS_AS(read_csv(path), std::runtime_error);
    std::remove(path.c_str());
  }
}

TEST_CASE("json summary shape") {
  ExperimentPlan plan = tiny_plan();
  plan.algos = {"gne", "de"};
  plan.conditions = {{NoiseMode::none, 0.0}, {NoiseMode::uniform01, 0.0}};
  plan.runs_per_cell = 2;
  plan.gne.pop_size = 6;
  plan.gne.max_iters = 6;
  plan.de.pop_size = 6;
  plan.de.max_iters = 6;

  const ExperimentResult res = run_experiment(plan);
  const nlohmann::json doc = nlohmann::json::parse(json_summary_string(plan, res));

  CHECK(doc["meta"]["artifact_version"] == "1.0.0");
  CHECK(doc["meta"]["dim"] == 2);
  CHECK(doc["meta"]["runs_per_cell"] == 2);
  CHECK(doc["meta"]["algos"].size() == 2);
  CHECK(doc["meta"]["gne"]["pop_size"] == 6);
  CHECK(doc["meta"]["gne"]["filter"] == "default");
  CHECK(doc["meta"]["de"]["crossover_rate"] == plan.de.crossover_rate);

  REQUIRE(doc["summary"].contains("none"));
  REQUIRE(doc["summary"].contains("uniform01"));
  const auto& clean = doc["summary"]["none"]["sphere"];
  CHECK(clean["gne"].contains("mean"));
  CHECK(clean["gne"].contains("median"));
  CHECK(!clean["gne"].contains("true_mean"));  // clean condition: identical anyway
  const auto& noisy = doc["summary"]["uniform01"]["sphere"];
  CHECK(noisy["gne"].contains("true_mean"));
  CHECK(noisy["de"].contains("true_mean"));
  // noise inflates the observed mean above the noise-free readout
  CHECK(noisy["de"]["mean"].get<double>() >= noisy["de"]["true_mean"].get<double>());

  for (const char* cond : {"none", "uniform01"}) {
    REQUIRE(doc["summary"][cond].contains("_mean_ranks"));
    const auto& mr = doc["summary"][cond]["_mean_ranks"];
    CHECK(mr["gne"].get<double>() + mr["de"].get<double>() ==
          doctest::Approx(3.0).epsilon(1e-12));
    CHECK(doc["summary"][cond].contains("_chi2"));
  }

  // ranks within each (condition, function) row sum to m(m+1)/2
  const double row_sum =
      clean["gne"]["rank"].get<double>() + clean["de"]["rank"].get<double>();
  CHECK(row_sum == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("cli parsing") {
  SUBCASE("run mode with defaults") {
    const CliOptions opt = cli_parse({"run", "--algo", "gne", "--fn", "sphere"});
    CHECK(opt.mode == "run");
    REQUIRE(opt.plan.algos.size() == 1);
    CHECK(opt.plan.algos[0] == "gne");
    REQUIRE(opt.plan.functions.size() == 1);
    CHECK(opt.plan.functions[0] == "sphere");
    CHECK(opt.plan.dim == 30);
    CHECK(opt.plan.gne.pop_size == 30);
    CHECK(opt.plan.gne.max_iters == 500);
    CHECK(opt.plan.runs_per_cell == 30);
    CHECK(opt.plan.base_seed == 0);
    CHECK(opt.plan.threads == 1);
    REQUIRE(opt.plan.conditions.size() == 1);
    CHECK(opt.plan.conditions[0].noise == NoiseMode::none);
    CHECK(opt.plan.conditions[0].shift == 0.0);
    CHECK(opt.format == "csv");
  }
  SUBCASE("compare defaults to all algorithms and both conditions") {
    const CliOptions opt = cli_parse({"compare", "--fn", "sphere", "--shift", "-50"});
    REQUIRE(opt.plan.algos.size() == 3);
    CHECK(opt.plan.algos[0] == "gne");
    CHECK(opt.plan.algos[1] == "de");
    CHECK(opt.plan.algos[2] == "ga");
    REQUIRE(opt.plan.conditions.size() == 2);
    CHECK(opt.plan.conditions[0].noise == NoiseMode::none);
    CHECK(opt.plan.conditions[1].noise == NoiseMode::uniform01);
    CHECK(opt.plan.conditions[0].shift == -50.0);
    CHECK(opt.plan.conditions[1].shift == -50.0);
  }
  SUBCASE("compare --fn all expands the whole registry") {
    const CliOptions opt = cli_parse({"compare", "--fn", "all", "--noise", "none"});
    CHECK(opt.plan.functions == function_names());
    REQUIRE(opt.plan.conditions.size() == 1);
  }
  SUBCASE("custom filter coefficients") {
    const CliOptions opt = cli_parse(
        {"run", "--algo", "gne", "--fn", "sphere", "--filter", "cheb:1,0,0"});
    CHECK(!opt.plan.gne.filter_default);
    REQUIRE(opt.plan.gne.filter_fixed.cheb.size() == 3);
    CHECK(opt.plan.gne.filter_fixed.cheb[0] == 1.0);
    CHECK(opt.plan.gne.filter_fixed.cheb[1] == 0.0);
  }
  SUBCASE("gne knobs pass through") {
    const CliOptions opt = cli_parse({"run", "--algo", "gne", "--fn", "levy",
                                      "--pop", "12", "--iters", "40", "--runs", "4",
                                      "--seed", "9", "--sigma0", "0.2", "--sigmaT",
                                      "0.001", "--elite-frac", "0.25",
                                      "--elite-prob", "0.4", "--noise", "uniform01"});
    CHECK(opt.plan.gne.pop_size == 12);
    CHECK(opt.plan.gne.max_iters == 40);
    CHECK(opt.plan.runs_per_cell == 4);
    CHECK(opt.plan.base_seed == 9);
    CHECK(opt.plan.gne.sigma_initial == 0.2);
    CHECK(opt.plan.gne.sigma_final == 0.001);
    CHECK(opt.plan.gne.elite_fraction == 0.25);
    CHECK(opt.plan.gne.elite_resample_prob == 0.4);
    CHECK(opt.plan.conditions[0].noise == NoiseMode::uniform01);
  }
  SUBCASE("rejects bad invocations") {
    CHECK_THROWS_AS(cli_parse({}), std::invalid_argument);
    CHECK_THROWS_AS(cli_parse({"run", "--algo", "gne", "--fn", "sphere",
                               "--bogus"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(cli_parse({"run", "--algo", "gne", "--fn", "not_a_fn"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(cli_parse({"run", "--algo", "gne", "--fn", "all"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(cli_parse({"run", "--fn", "sphere"}), std::invalid_argument);
    CHECK_THROWS_AS(cli_parse({"run", "--algo", "de", "--fn", "sphere",
                               "--pop", "3"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(cli_parse({"run", "--algo", "gne", "--fn", "sphere",
                               "--noise", "gaussian"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(cli_parse({"run", "--algo", "gne", "--fn", "sphere",
                               "--filter", "cheb:1,oops"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(cli_parse({"ranks"}), std::invalid_argument);
  }
}

TEST_CASE("cli_main end to end") {
  std::ostringstream out, err;

  SUBCASE("help exits cleanly") {
    CHECK(cli_main({"--help"}, out, err) == 0);
    CHECK(out.str().find("gnebench") != std::string::npos);
  }
  SUBCASE("usage errors exit 1") {
    CHECK(cli_main({"--bogus"}, out, err) == 1);
    CHECK(err.str().find("--help") != std::string::npos);
  }
  SUBCASE("missing ranks input exits 2") {
    CHECK(cli_main({"ranks", "/tmp/gnebench_definitely_absent.csv"}, out, err) == 2);
    CHECK(!err.str().empty());
  }
  SUBCASE("tiny run writes its artifact and exits 0") {
    const std::string path = tmp_path("cli_run.csv");
    const int rc = cli_main({"run", "--algo", "de", "--fn", "sphere", "--dim", "2",
                             "--pop", "6", "--iters", "5", "--runs", "2",
                             "--out", path},
                            out, err);
    CHECK(rc == 0);
    CHECK(out.str().find("wrote") != std::string::npos);
    CHECK(slurp(path).rfind("algo,function,", 0) == 0);
    std::remove(path.c_str());
  }
  SUBCASE("compare then ranks round trip") {
    const std::string path = tmp_path("cli_cmp.csv");
    const int rc = cli_main({"compare", "--fn", "sphere", "--dim", "2",
                             "--pop", "6", "--iters", "5", "--runs", "2",
                             "--noise", "none", "--out", path},
                            out, err);
    REQUIRE(rc == 0);
    std::ostringstream rout, rerr;
    CHECK(cli_main({"ranks", path}, rout, rerr) == 0);
    CHECK(rout.str().find("mean ranks:") != std::string::npos);
    CHECK(rout.str().find("chi2=") != std::string::npos);
    std::remove(path.c_str());
  }
  SUBCASE("json format writes parseable output") {
    const std::string path = tmp_path("cli_run.json");
    const int rc = cli_main({"run", "--algo", "ga", "--fn", "sphere", "--dim", "2",
                             "--pop", "6", "--iters", "5", "--runs", "2",
                             "--out", path, "--format", "json"},
                            out, err);
    REQUIRE(rc == 0);
    const nlohmann::json doc = nlohmann::json::parse(slurp(path));
    CHECK(doc["meta"]["algos"][0] == "ga");
    std::remove(path.c_str());
  }
}
