#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gsmooth/errors.hpp"
#include "gsmooth/estimators.hpp"
#include "gsmooth/problems.hpp"
#include "gsmooth/samplers.hpp"

namespace gsmooth {

enum class Direction { Minimize, Maximize };

struct LinRegSetup {
  std::size_t d = 100;
  std::size_t mc_samples = 1000;  // E[Q gamma] estimate
  std::size_t test_size = 1000;
  PointSampling sampling = PointSampling::RotationFree;
};

struct DfoSetup {
  DfoObjective objective;
};

using ProblemSetup = std::variant<LinRegSetup, DfoSetup>;

std::size_t dimension(const ProblemSetup& setup);

struct RunConfig {
  ProblemSetup problem = LinRegSetup{};
  SamplerKind sampler = SamplerKind::GS;
  EstimatorConfig estimator;
  double learning_rate = 0.001;
  std::size_t rounds = 100;
  std::size_t iters_per_round = 10;
  std::uint64_t seed = 0;
  Direction direction = Direction::Minimize;

  void validate() const;
};

struct RoundMetrics {
  std::size_t round = 0;  // 1-based
  // Linear regression: mean loss over the held-out set. DFO: noiseless
  // objective at the current parameters.
  double test_metric = 0.0;
  // Mean over the round's iterations of |g - grad F|^2; absent when the
  // problem has no analytic gradient, NaN when the round had no iterations.
  std::optional<double> grad_mse;
  std::size_t evaluations = 0;
};

struct RunRecord {
  std::vector<RoundMetrics> rounds;
  std::vector<double> final_theta;
  std::size_t evaluations_total = 0;
  bool diverged = false;
  std::size_t diverged_round = 0;
  std::size_t diverged_iteration = 0;
};

/// theta - eta g (minimize) or theta + eta g (maximize). Throws
/// DivergenceError (round/iteration left at 0) if the result is not finite.
std::vector<double> sgd_step(std::span<const double> theta, std::span<const double> gradient,
                             double learning_rate, Direction direction);

/// Full experiment: rounds x iters SGD steps on estimated gradients, one test
/// measurement per round. Divergence stops the run and returns the rounds
/// completed so far with `diverged` set.
RunRecord run(const RunConfig& config);

struct GridCell {
  double c = 0.0;
  double learning_rate = 0.0;
  std::vector<double> final_metrics;  // one per selection seed
  double mean_final_metric = 0.0;     // NaN if any seed diverged
  bool diverged = false;
};

struct GridSearchResult {
  double c = 0.0;
  double learning_rate = 0.0;
  std::vector<GridCell> cells;  // c-major, in grid order
};

class GridSearchError : public Error {
 public:
  GridSearchError(const std::string& what, std::vector<GridCell> cells)
      : Error(what), cells_(std::move(cells)) {}
  const std::vector<GridCell>& cells() const noexcept { return cells_; }

 private:
  std::vector<GridCell> cells_;
};

/// Index of the best non-divergent cell under the ranking grid_search uses,
/// or nullopt if every cell diverged.
std::optional<std::size_t> select_cell(std::span<const GridCell> cells, Direction direction);

/// Runs every (c, eta) cell on each selection seed and returns the cell with
/// the best seed-averaged final test metric. Ties go to the smaller eta, then
/// the smaller c. Cells with a divergent seed rank last; if every cell
/// diverges, throws GridSearchError.
GridSearchResult grid_search(const RunConfig& base, std::span<const double> c_grid,
                             std::span<const double> lr_grid,
                             std::span<const std::uint64_t> selection_seeds);

/// Throws PreconditionError if the two seed lists share a value.
void require_disjoint_seeds(std::span<const std::uint64_t> selection,
                            std::span<const std::uint64_t> evaluation);

}  // namespace gsmooth
