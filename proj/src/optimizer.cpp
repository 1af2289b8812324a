#include "gsmooth/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gsmooth/errors.hpp"
#include "gsmooth/kernels.hpp"

namespace gsmooth {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Stream labels under the run's root seed.
enum : std::uint64_t { kModelStream = 0, kTestStream = 1, kInitStream = 2, kIterStream = 3 };

struct Instance {
  std::unique_ptr<Problem> problem;
  std::vector<DataPoint> test_set;  // empty for DFO
};

Instance instantiate(const ProblemSetup& setup, const RngStream& root) {
  Instance inst;
  if (const auto* lr = std::get_if<LinRegSetup>(&setup)) {
    auto model = std::make_unique<LinRegModel>(lr->d, root.derive(kModelStream), lr->mc_samples,
                                               lr->sampling);
    RngStream ts = root.derive(kTestStream);
    inst.test_set.reserve(lr->test_size);
    for (std::size_t i = 0; i < lr->test_size; ++i) inst.test_set.push_back(model->sample(ts));
    inst.problem = std::move(model);
  } else {
    inst.problem = std::make_unique<DfoProblem>(std::get<DfoSetup>(setup).objective);
  }
  return inst;
}

double test_metric(const Instance& inst, std::span<const double> theta) {
  if (!inst.test_set.empty()) return mean_loss(theta, inst.test_set);
  return inst.problem->objective(theta);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return s;
}

}  // namespace

std::size_t dimension(const ProblemSetup& setup) {
  if (const auto* lr = std::get_if<LinRegSetup>(&setup)) return lr->d;
  return std::get<DfoSetup>(setup).objective.d;
}

void RunConfig::validate() const {
  estimator.validate();
  if (dimension(problem) < 1) throw ParameterError("dimension must be at least 1");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw ParameterError("learning rate must be non-negative and finite");
  }
  if (rounds < 1) throw ParameterError("rounds must be at least 1");
  if (sampler == SamplerKind::BeSShrinkage && estimator.L + dimension(problem) <= 5) {
    throw PreconditionError("BeS-shrinkage requires L + d > 5");
  }
  if (const auto* dfo = std::get_if<DfoSetup>(&problem)) {
    if (!(dfo->objective.noise_level >= 0.0)) throw ParameterError("noise level must be non-negative");
  }
}

std::vector<double> sgd_step(std::span<const double> theta, std::span<const double> gradient,
                             double learning_rate, Direction direction) {
  if (theta.size() != gradient.size()) throw PreconditionError("sgd_step: dimension mismatch");
  std::vector<double> next(theta.size());
  const double signed_rate = direction == Direction::Minimize ? -learning_rate : learning_rate;
  kernels::add_scaled(theta, signed_rate, gradient, next);
  for (double v : next) {
    if (!std::isfinite(v)) throw DivergenceError("parameters became non-finite", 0, 0);
  }
  return next;
}

RunRecord run(const RunConfig& config) {
  config.validate();
  const RngStream root(config.seed);
  const Instance inst = instantiate(config.problem, root);
  const Problem& problem = *inst.problem;
  const std::size_t d = problem.dimension();
  const bool has_gradient = problem.capabilities().analytic_gradient;

  RunRecord record;
  RngStream init = root.derive(kInitStream);
  std::vector<double> theta = standard_normal(init, d);
  SamplerSpec spec = make_sampler_spec(config.sampler, config.estimator.L, d);
  const RngStream iter_root = root.derive(kIterStream);

  std::size_t t = 0;
  for (std::size_t round = 1; round <= config.rounds; ++round) {
    RoundMetrics metrics;
    metrics.round = round;
    double mse_sum = 0.0;
    std::size_t iter = 0;
    try {
      for (; iter < config.iters_per_round; ++iter, ++t) {
        const RngStream it = iter_root.derive(t);
        DirectionSet dirs;
        if (config.estimator.kind != EstimatorKind::SingleGS) {
          dirs = sample_directions(spec, config.estimator.L, d, it.derive(0));
        }
        const GradientEstimate g = estimate(problem, theta, config.estimator, dirs, it.derive(1));
        metrics.evaluations += g.evaluations_used;
        if (has_gradient) mse_sum += squared_distance(g.vector, problem.gradient(theta));
        if (config.sampler == SamplerKind::GuidedES) spec = guided_update(std::move(spec), g.vector);
        theta = sgd_step(theta, g.vector, config.learning_rate, config.direction);
      }
    } catch (const DivergenceError&) {
      record.diverged = true;
    } catch (const EvaluationError&) {
      record.diverged = true;
    }
    record.evaluations_total += metrics.evaluations;
    if (record.diverged) {
      record.diverged_round = round;
      record.diverged_iteration = iter + 1;
      break;
    }
    metrics.test_metric = test_metric(inst, theta);
    if (has_gradient) {
      metrics.grad_mse = config.iters_per_round == 0
                             ? kNaN
                             : mse_sum / static_cast<double>(config.iters_per_round);
    }
    record.rounds.push_back(metrics);
  }
  record.final_theta = std::move(theta);
  return record;
}

void require_disjoint_seeds(std::span<const std::uint64_t> selection,
                            std::span<const std::uint64_t> evaluation) {
  for (auto s : selection) {
    if (std::find(evaluation.begin(), evaluation.end(), s) != evaluation.end()) {
      throw PreconditionError("selection seed " + std::to_string(s) +
                              " is also an evaluation seed; the two sets must be disjoint");
    }
  }
}

std::optional<std::size_t> select_cell(std::span<const GridCell> cells, Direction direction) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const GridCell& cell = cells[i];
    if (cell.diverged) continue;
    if (!best) {
      best = i;
      continue;
    }
    const GridCell& b = cells[*best];
    const double x = cell.mean_final_metric;
    const double y = b.mean_final_metric;
    const bool better = direction == Direction::Maximize ? x > y : x < y;
    if (better || (x == y && (cell.learning_rate < b.learning_rate ||
                              (cell.learning_rate == b.learning_rate && cell.c < b.c)))) {
      best = i;
    }
  }
  return best;
}

GridSearchResult grid_search(const RunConfig& base, std::span<const double> c_grid,
                             std::span<const double> lr_grid,
                             std::span<const std::uint64_t> selection_seeds) {
  if (c_grid.empty() || lr_grid.empty() || selection_seeds.empty()) {
    throw PreconditionError("grid search needs non-empty c grid, learning-rate grid and seed list");
  }
  GridSearchResult result;
  for (double c : c_grid) {
    for (double lr : lr_grid) {
      GridCell cell{c, lr, {}, 0.0, false};
      for (auto seed : selection_seeds) {
        RunConfig cfg = base;
        cfg.estimator.c = c;
        cfg.learning_rate = lr;
        cfg.seed = seed;
        const RunRecord rec = run(cfg);
        const double final_metric =
            rec.diverged || rec.rounds.empty() ? kNaN : rec.rounds.back().test_metric;
        cell.final_metrics.push_back(final_metric);
        if (!std::isfinite(final_metric)) cell.diverged = true;
      }
      if (cell.diverged) {
        cell.mean_final_metric = kNaN;
      } else {
        double s = 0.0;
        for (double v : cell.final_metrics) s += v;
        cell.mean_final_metric = s / static_cast<double>(cell.final_metrics.size());
      }
      result.cells.push_back(std::move(cell));
    }
  }

  const auto best_index = select_cell(result.cells, base.direction);
  if (!best_index) throw GridSearchError("every grid cell diverged", result.cells);
  const GridCell* best = &result.cells[*best_index];
  result.c = best->c;
  result.learning_rate = best->learning_rate;
  return result;
}

}  // namespace gsmooth
