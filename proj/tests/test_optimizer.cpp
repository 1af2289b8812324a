#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "gsmooth/errors.hpp"
#include "gsmooth/optimizer.hpp"

using namespace gsmooth;

namespace {

RunConfig sphere_config(SamplerKind sampler, std::uint64_t seed) {
  RunConfig cfg;
  cfg.problem = DfoSetup{{DfoFunction::Sphere, 10, 0.1}};
  cfg.sampler = sampler;
  cfg.estimator.kind = EstimatorKind::ForwardDifference;
  cfg.estimator.c = 0.1;
  cfg.estimator.L = 1;
  cfg.estimator.N = 1;
  cfg.learning_rate = 1e-3;
  cfg.seed = seed;
  return cfg;
}

RunConfig small_linreg(std::uint64_t seed) {
  RunConfig cfg;
  cfg.problem = LinRegSetup{10, 200, 100};
  cfg.estimator.L = 2;
  cfg.estimator.N = 3;
  cfg.estimator.c = 0.01;
  cfg.learning_rate = 0.01;
  cfg.rounds = 5;
  cfg.iters_per_round = 4;
  cfg.seed = seed;
  return cfg;
}

GridCell cell(double c, double lr, double metric, bool diverged = false) {
  GridCell g;
  g.c = c;
  g.learning_rate = lr;
  g.final_metrics = {metric};
  g.mean_final_metric = diverged ? std::numeric_limits<double>::quiet_NaN() : metric;
  g.diverged = diverged;
  return g;
}

}  // namespace

TEST_CASE("sgd_step") {
  const std::vector<double> theta{0.0, 0.0};
  const std::vector<double> g{1.0, -2.0};
  CHECK(sgd_step(theta, g, 0.5, Direction::Minimize) == std::vector<double>{-0.5, 1.0});
  CHECK(sgd_step(theta, g, 0.5, Direction::Maximize) == std::vector<double>{0.5, -1.0});
  const std::vector<double> start{0.3, -0.7};
  CHECK(sgd_step(start, g, 0.0, Direction::Minimize) == start);
  const auto twice = sgd_step(sgd_step(start, g, 0.1, Direction::Minimize), g, 0.1, Direction::Minimize);
  const auto once = sgd_step(start, g, 0.2, Direction::Minimize);
  for (std::size_t j = 0; j < 2; ++j) CHECK(twice[j] == doctest::Approx(once[j]));
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(sgd_step(theta, std::vector<double>{inf, 0.0}, 1.0, Direction::Minimize), DivergenceError);
}

TEST_CASE("config validation") {
  auto cfg = sphere_config(SamplerKind::GS, 0);
  cfg.validate();
  cfg.learning_rate = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = sphere_config(SamplerKind::BeSShrinkage, 0);
  std::get<DfoSetup>(cfg.problem).objective.d = 2;
  cfg.estimator.L = 2;
  CHECK_THROWS(cfg.validate());
  cfg = sphere_config(SamplerKind::GS, 0);
  cfg.rounds = 0;
  CHECK_THROWS(cfg.validate());
}

TEST_CASE("zero iterations report the initial metric") {
  auto cfg = small_linreg(3);
  cfg.rounds = 1;
  cfg.iters_per_round = 0;
  const auto rec = run(cfg);
  REQUIRE(rec.rounds.size() == 1);
  CHECK(rec.rounds[0].round == 1);
  CHECK(std::isfinite(rec.rounds[0].test_metric));
  REQUIRE(rec.rounds[0].grad_mse.has_value());
  CHECK(std::isnan(*rec.rounds[0].grad_mse));
  CHECK(rec.evaluations_total == 0);

  // The first round of a longer run starts from the same parameters.
  cfg.rounds = 3;
  const auto longer = run(cfg);
  CHECK(longer.rounds[0].test_metric == rec.rounds[0].test_metric);
  CHECK(longer.final_theta == rec.final_theta);
}

TEST_CASE("runs are deterministic") {
  for (auto sampler : {SamplerKind::GS, SamplerKind::OrthogonalES, SamplerKind::GuidedES}) {
    auto cfg = small_linreg(11);
    cfg.sampler = sampler;
    const auto a = run(cfg);
    const auto b = run(cfg);
    REQUIRE(a.rounds.size() == b.rounds.size());
    for (std::size_t r = 0; r < a.rounds.size(); ++r) {
      CHECK(a.rounds[r].test_metric == b.rounds[r].test_metric);
      CHECK(*a.rounds[r].grad_mse == *b.rounds[r].grad_mse);
    }
    CHECK(a.final_theta == b.final_theta);
    cfg.seed = 12;
    CHECK(run(cfg).final_theta != a.final_theta);
  }
}

TEST_CASE("evaluation budget") {
  auto cfg = small_linreg(5);
  for (auto kind : {EstimatorKind::ForwardDifference, EstimatorKind::Antithetic, EstimatorKind::SingleGS}) {
    cfg.estimator.kind = kind;
    // A single-point GS estimate scales with f / c, so keep its steps small.
    cfg.learning_rate = kind == EstimatorKind::SingleGS ? 1e-6 : 0.01;
    const auto rec = run(cfg);
    REQUIRE(!rec.diverged);
    const std::size_t per_step = evaluations_per_estimate(cfg.estimator);
    CHECK(rec.evaluations_total == cfg.rounds * cfg.iters_per_round * per_step);
    REQUIRE(rec.rounds.size() == cfg.rounds);
    for (const auto& r : rec.rounds) CHECK(r.evaluations == cfg.iters_per_round * per_step);
  }
}

TEST_CASE("metric rows") {
  const auto rec = run(small_linreg(6));
  REQUIRE(rec.rounds.size() == 5);
  for (std::size_t r = 0; r < 5; ++r) {
    CHECK(rec.rounds[r].round == r + 1);
    CHECK(rec.rounds[r].grad_mse.has_value());
    CHECK(*rec.rounds[r].grad_mse > 0.0);
  }
  auto dfo = sphere_config(SamplerKind::GS, 1);
  dfo.rounds = 4;
  const auto d = run(dfo);
  REQUIRE(d.rounds.size() == 4);
  CHECK(d.rounds[0].grad_mse.has_value() == false);
}

TEST_CASE("sphere objective falls below 10% of its initial value") {
  double initial = 0.0, final = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto cfg = sphere_config(SamplerKind::GS, seed);
    cfg.rounds = 1;
    cfg.iters_per_round = 0;
    initial += run(cfg).rounds[0].test_metric;
    cfg.rounds = 100;
    cfg.iters_per_round = 10;
    const auto rec = run(cfg);
    CHECK(!rec.diverged);
    final += rec.rounds.back().test_metric;
  }
  CHECK(final < 0.1 * initial);
}

TEST_CASE("GS-shrinkage improves on sphere between rounds 10 and 100") {
  int improved = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto rec = run(sphere_config(SamplerKind::GSShrinkage, seed));
    REQUIRE(rec.rounds.size() == 100);
    if (rec.rounds[99].test_metric < rec.rounds[9].test_metric) ++improved;
  }
  CHECK(improved >= 4);
}

TEST_CASE("divergence ends the run") {
  auto cfg = sphere_config(SamplerKind::GS, 2);
  cfg.learning_rate = 1e300;
  const auto rec = run(cfg);
  CHECK(rec.diverged);
  CHECK(rec.diverged_round >= 1);
  CHECK(rec.diverged_iteration >= 1);
  CHECK(rec.diverged_iteration <= cfg.iters_per_round);
  CHECK(rec.rounds.size() == rec.diverged_round - 1);
}

TEST_CASE("cell selection") {
  const std::vector<GridCell> one{cell(0.1, 1e-3, 5.0)};
  CHECK(select_cell(one, Direction::Minimize) == 0u);

  const std::vector<GridCell> mixed{cell(0.1, 1e-3, 5.0, true), cell(0.1, 1e-2, 7.0)};
  CHECK(select_cell(mixed, Direction::Minimize) == 1u);
  CHECK(select_cell(mixed, Direction::Maximize) == 1u);

  const std::vector<GridCell> ties{cell(0.2, 1e-2, 1.0), cell(0.2, 1e-3, 1.0), cell(0.1, 1e-3, 1.0),
                                   cell(0.1, 1e-2, 3.0)};
  CHECK(select_cell(ties, Direction::Minimize) == 2u);
  CHECK(select_cell(ties, Direction::Maximize) == 3u);

  const std::vector<GridCell> dead{cell(0.1, 1.0, 0.0, true), cell(0.2, 1.0, 0.0, true)};
  CHECK(!select_cell(dead, Direction::Minimize).has_value());
}

TEST_CASE("grid search") {
  const std::vector<std::uint64_t> seeds{100, 101};
  auto base = sphere_config(SamplerKind::GS, 0);
  base.rounds = 20;
  const std::vector<double> cs{0.1};

  const std::vector<double> single{1e-3};
  const auto one = grid_search(base, cs, single, seeds);
  CHECK(one.learning_rate == 1e-3);
  CHECK(one.cells.size() == 1);

  const std::vector<double> lrs{1e-6, 1e-4, 1e-3, 1e300};
  const auto res = grid_search(base, cs, lrs, seeds);
  REQUIRE(res.cells.size() == 4);
  CHECK(res.cells[3].diverged);
  CHECK(std::isnan(res.cells[3].mean_final_metric));
  for (const auto& c : res.cells) {
    CHECK(c.final_metrics.size() == seeds.size());
    if (!c.diverged) {
      const auto& best = res.cells[*select_cell(res.cells, Direction::Minimize)];
      CHECK(best.mean_final_metric <= c.mean_final_metric);
    }
  }
  CHECK(res.learning_rate != 1e300);

  const std::vector<double> bad{1e300, 1e305};
  try {
    grid_search(base, cs, bad, seeds);
    FAIL("expected GridSearchError");
  } catch (const GridSearchError& e) {
    CHECK(e.cells().size() == 2);
    for (const auto& c : e.cells()) CHECK(c.diverged);
  }
  const std::vector<double> none;
  CHECK_THROWS(grid_search(base, cs, none, seeds));
}

TEST_CASE("selection and evaluation seeds must be disjoint") {
  const std::vector<std::uint64_t> sel{1, 2, 3};
  const std::vector<std::uint64_t> ok{4, 5};
  const std::vector<std::uint64_t> clash{0, 3};
  require_disjoint_seeds(sel, ok);
  CHECK_THROWS_AS(require_disjoint_seeds(sel, clash), PreconditionError);
}
