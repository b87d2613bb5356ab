#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "gnebench/baselines.hpp"

using namespace gne;

TEST_CASE("de_mutant_from is plain donor arithmetic") {
  Vector a(2), b(2), c(2);
  a << 1, 1;
  b << 2, 0;
  c << 0, 2;
  const Vector v = de_mutant_from(a, b, c, 0.5);
  CHECK(v[0] == 2.0);
  CHECK(v[1] == 0.0);

  const Vector w = de_mutant_from(a, b, c, 0.0);
  CHECK(w[0] == a[0]);
  CHECK(w[1] == a[1]);
}

TEST_CASE("de_mutate draws distinct donors, none equal to the target index") {
  SUBCASE("alpha = 0 exposes r1 directly") {
    Matrix pop(5, 2);
    pop << 0, 0, 1, 1, 2, 2, 3, 3, 4, 4;
    Rng rng(17);
    for (int trial = 0; trial < 1000; ++trial) {
      const int i = trial % 5;
      const Vector v = de_mutate(pop, i, 0.0, rng);
      CHECK(v[0] == v[1]);           // mutant is one of the rows
      CHECK(v[0] != double(i));      // and never row i itself
      CHECK(v[0] >= 0.0);
      CHECK(v[0] <= 4.0);
    }
  }
  SUBCASE("alpha = 1 on decodable rows proves pairwise distinctness") {
    // rows 0,1,10,100: r1 + r2 - r3 over distinct donors from {1,10,100}
    // can only produce -89, 91, or 109; any repeated donor or a donor equal
    // to the target index would land outside this set
    Matrix pop(4, 1);
    pop << 0, 1, 10, 100;
    Rng rng(23);
    const std::set<double> legal = {-89.0, 91.0, 109.0};
    for (int trial = 0; trial < 2000; ++trial) {
      const Vector v = de_mutate(pop, 0, 1.0, rng);
      CHECK(legal.count(v[0]) == 1);
    }
  }
  SUBCASE("needs at least four rows") {
    Rng rng(1);
    CHECK_THROWS_AS(de_mutate(Matrix::Zero(3, 2), 0, 0.5, rng),
                    std::invalid_argument);
  }
}

TEST_CASE("de_crossover") {
  const int d = 10;
  const Vector target = Vector::Zero(d);
  const Vector mutant = Vector::Ones(d);

  SUBCASE("p_cr = 1 copies the mutant wholesale") {
    Rng rng(3);
    const Vector u = de_crossover(target, mutant, 1.0, rng);
    CHECK(u.sum() == double(d));
  }
  SUBCASE("p_cr = 0 still forces exactly one mutant coordinate") {
    Rng rng(4);
    for (int trial = 0; trial < 200; ++trial) {
      const Vector u = de_crossover(target, mutant, 0.0, rng);
      CHECK(u.sum() == 1.0);
    }
  }
  SUBCASE("inheritance count matches the analytic mean") {
    // E[#mutant genes] = d*p + (1-p), the forced index adding (1-p)
    const double p = 0.5;
    Rng rng(5);
    double acc = 0.0;
    const int m = 20000;
    for (int trial = 0; trial < m; ++trial)
      acc += de_crossover(target, mutant, p, rng).sum();
    CHECK(std::abs(acc / m - (d * p + (1.0 - p))) <= 0.1);
  }
  SUBCASE("dimension mismatch throws") {
    Rng rng(6);
    CHECK_THROWS_AS(de_crossover(target, Vector::Ones(3), 0.5, rng),
                    std::invalid_argument);
  }
}

TEST_CASE("de_select is greedy with trial winning ties") {
  Vector t(1), u(1);
  t << 1;
  u << 2;
  SUBCASE("strictly better trial") {
    auto [w, f] = de_select(t, u, 5.0, 3.0);
    CHECK(w[0] == 2.0);
    CHECK(f == 3.0);
  }
  SUBCASE("strictly worse trial") {
    auto [w, f] = de_select(t, u, 3.0, 5.0);
    CHECK(w[0] == 1.0);
    CHECK(f == 3.0);
  }
  SUBCASE("tie goes to the trial") {
    auto [w, f] = de_select(t, u, 4.0, 4.0);
    CHECK(w[0] == 2.0);
    CHECK(f == 4.0);
  }
  SUBCASE("non-finite fitness is rejected") {
    CHECK_THROWS_AS(de_select(t, u, std::nan(""), 1.0), std::invalid_argument);
  }
}

TEST_CASE("de_run") {
  const ObjectiveSpec sphere2 = make_objective("sphere", 2);

  SUBCASE("defaults") {
    DeConfig c;
    CHECK(c.scale_factor == 0.5);
    CHECK(c.crossover_rate == 0.2);
    CHECK(c.pop_size == 30);
    CHECK(c.max_iters == 500);
  }
  SUBCASE("solves a small sphere") {
    DeConfig c;
    c.pop_size = 10;
    c.max_iters = 100;
    c.scale_factor = 0.5;
    c.crossover_rate = 0.9;
    c.seed = 2;
    const RunTrace tr = de_run(c, sphere2);
    CHECK(tr.best.f_best < 1e-3);
    CHECK(tr.algo == "de");
  }
  SUBCASE("every slot improves monotonically under greedy selection") {
    DeConfig c;
    c.pop_size = 8;
    c.max_iters = 50;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      c.seed = seed;
      Vector prev;
      int calls = 0;
      de_run(c, sphere2, [&](int t, const Vector& fit) {
        ++calls;
        CHECK(t == calls);
        if (prev.size() != 0)
          for (int i = 0; i < fit.size(); ++i) CHECK(fit[i] <= prev[i]);
        prev = fit;
      });
      CHECK(calls == 50);
    }
  }
  SUBCASE("budget, bounds, determinism") {
    DeConfig c;
    c.pop_size = 9;
    c.max_iters = 30;
    c.seed = 6;
    const RunTrace a = de_run(c, sphere2);
    CHECK(a.best.eval_count == 9 * 31);
    CHECK(a.iters.size() == 31);
    CHECK(a.iters[0].evals == 9);
    CHECK(a.iters.back().evals == 9 * 31);
    for (size_t i = 1; i < a.iters.size(); ++i)
      CHECK(a.iters[i].best_f <= a.iters[i - 1].best_f);
    CHECK(a.best.x_best.minCoeff() >= -100.0);
    CHECK(a.best.x_best.maxCoeff() <= 100.0);

    const RunTrace b = de_run(c, sphere2);
    CHECK(a.best.f_best == b.best.f_best);
    for (size_t i = 0; i < a.iters.size(); ++i)
      CHECK(a.iters[i].mean_f == b.iters[i].mean_f);
  }
  SUBCASE("config validation") {
    DeConfig c;
    c.pop_size = 3;
    CHECK_THROWS_AS(de_run(c, sphere2), std::invalid_argument);
    c = {};
    c.max_iters = 0;
    CHECK_THROWS_AS(de_run(c, sphere2), std::invalid_argument);
    c = {};
    c.scale_factor = 0.0;
    CHECK_THROWS_AS(de_run(c, sphere2), std::invalid_argument);
    c = {};
    c.crossover_rate = 1.5;
    CHECK_THROWS_AS(de_run(c, sphere2), std::invalid_argument);
  }
}

TEST_CASE("ga_run") {
  const ObjectiveSpec sphere3 = make_objective("sphere", 3);

  SUBCASE("disabled operators freeze the best under elitism") {
    GaConfig c;
    c.pop_size = 10;
    c.max_iters = 40;
    c.crossover_prob = 0.0;
    c.mutation_prob = 0.0;
    c.seed = 8;
    const RunTrace tr = ga_run(c, sphere3);
    for (const auto& rec : tr.iters) CHECK(rec.best_f == tr.iters[0].best_f);
  }
  SUBCASE("improves the sphere") {
    GaConfig c;
    c.pop_size = 20;
    c.max_iters = 100;
    c.seed = 9;
    const RunTrace tr = ga_run(c, sphere3);
    CHECK(tr.best.f_best < tr.iters[0].best_f);
    CHECK(tr.best.f_best < 100.0);
    CHECK(tr.algo == "ga");
  }
  SUBCASE("budget, monotone best, bounds, determinism") {
    GaConfig c;
    c.pop_size = 7;
    c.max_iters = 20;
    c.seed = 10;
    const RunTrace a = ga_run(c, sphere3);
    CHECK(a.best.eval_count == 7 * 21);
    CHECK(a.iters.size() == 21);
    for (size_t i = 1; i < a.iters.size(); ++i)
      CHECK(a.iters[i].best_f <= a.iters[i - 1].best_f);
    CHECK(a.best.x_best.cwiseAbs().maxCoeff() <= 100.0);

    const RunTrace b = ga_run(c, sphere3);
    CHECK(a.best.f_best == b.best.f_best);
    for (size_t i = 0; i < a.iters.size(); ++i)
      CHECK(a.iters[i].std_f == b.iters[i].std_f);
  }
  SUBCASE("config validation") {
    GaConfig c;
    c.pop_size = 1;
    CHECK_THROWS_AS(ga_run(c, sphere3), std::invalid_argument);
    c = {};
    c.tournament_size = 1;
    CHECK_THROWS_AS(ga_run(c, sphere3), std::invalid_argument);
    c = {};
    c.mutation_prob = 1.5;
    CHECK_THROWS_AS(ga_run(c, sphere3), std::invalid_argument);
    c = {};
    c.crossover_prob = -0.1;
    CHECK_THROWS_AS(ga_run(c, sphere3), std::invalid_argument);
  }
}
