#include "gsmooth/estimators.hpp"

#include <cmath>
#include <string>

#include "gsmooth/errors.hpp"
#include "gsmooth/kernels.hpp"

namespace gsmooth {
namespace {

constexpr double kMinRewardScale = 1e-8;

double checked(double value, std::span<const double> point) {
  if (!std::isfinite(value)) {
    throw EvaluationError("objective returned a non-finite value",
                          std::vector<double>(point.begin(), point.end()));
  }
  return value;
}

void check_directions(const DirectionSet& dirs, const EstimatorConfig& cfg, std::size_t d) {
  if (dirs.count() != cfg.L) {
    throw PreconditionError("direction set has " + std::to_string(dirs.count()) +
                            " rows, estimator expects L=" + std::to_string(cfg.L));
  }
  if (dirs.dimension() != d) {
    throw PreconditionError("direction dimension " + std::to_string(dirs.dimension()) +
                            " does not match parameter dimension " + std::to_string(d));
  }
}

// Population standard deviation of every evaluation collected this step.
void apply_reward_scale(std::span<const double> pool, GradientEstimate& out) {
  double mean = 0.0;
  for (double v : pool) mean += v;
  mean /= static_cast<double>(pool.size());
  double ss = 0.0;
  for (double v : pool) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(pool.size()));
  out.reward_scale_clamped = !(sd >= kMinRewardScale);
  out.reward_scale = out.reward_scale_clamped ? kMinRewardScale : sd;
}

// g = sum_l weight[l] * eps_l, accumulated in row order.
std::vector<double> combine(const DirectionSet& dirs, std::span<const double> weight) {
  std::vector<double> g(dirs.dimension(), 0.0);
  for (std::size_t l = 0; l < dirs.count(); ++l) kernels::axpy(weight[l], dirs.row(l), g);
  return g;
}

}  // namespace

std::string_view to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::SingleGS:
      return "gs";
    case EstimatorKind::ForwardDifference:
      return "fd";
    case EstimatorKind::Antithetic:
      return "at";
  }
  return "unknown";
}

std::optional<EstimatorKind> parse_estimator_kind(std::string_view name) {
  for (auto k : {EstimatorKind::SingleGS, EstimatorKind::ForwardDifference, EstimatorKind::Antithetic}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

void EstimatorConfig::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw ParameterError("spacing c must be positive");
  if (L < 1) throw ParameterError("L must be at least 1");
  if (N < 1) throw ParameterError("N must be at least 1");
}

std::size_t evaluations_per_estimate(const EstimatorConfig& cfg) {
  switch (cfg.kind) {
    case EstimatorKind::SingleGS:
      return 1;
    case EstimatorKind::ForwardDifference:
      return (cfg.L + 1) * cfg.N;
    case EstimatorKind::Antithetic:
      return 2 * cfg.L * cfg.N;
  }
  return 0;
}

GradientEstimate estimate_gs_single(const Problem& problem, std::span<const double> theta,
                                    double c, std::span<const double> direction,
                                    const RngStream& stream) {
  if (!(c > 0.0)) throw ParameterError("spacing c must be positive");
  GradientEstimate out;
  out.config = {EstimatorKind::SingleGS, c, 1, 1, false};

  RngStream xi_stream = stream.derive(1);
  RngStream eval_stream = stream.derive(2);
  const DataPoint xi = problem.sample(xi_stream);
  std::vector<double> point(theta.size());
  kernels::add_scaled(theta, c, direction, point);
  const double value = checked(problem.evaluate(point, xi, eval_stream), point);
  out.evaluations_used = 1;

  out.vector.assign(direction.begin(), direction.end());
  kernels::scale(value / c, out.vector);
  return out;
}

GradientEstimate estimate_gs_single(const Problem& problem, std::span<const double> theta, double c,
                                    const RngStream& stream) {
  RngStream dir_stream = stream.derive(0);
  const std::vector<double> eps = standard_normal(dir_stream, theta.size());
  return estimate_gs_single(problem, theta, c, eps, stream);
}

GradientEstimate estimate_fd(const Problem& problem, std::span<const double> theta,
                             const EstimatorConfig& cfg, const DirectionSet& dirs,
                             const RngStream& stream) {
  cfg.validate();
  check_directions(dirs, cfg, theta.size());
  const std::size_t L = cfg.L;
  const std::size_t N = cfg.N;

  GradientEstimate out;
  out.config = cfg;

  std::vector<DataPoint> xi(N);
  std::vector<double> baseline(N);
  for (std::size_t i = 0; i < N; ++i) {
    RngStream xs = stream.derive(0).derive(i);
    RngStream es = stream.derive(1).derive(i);
    xi[i] = problem.sample(xs);
    baseline[i] = checked(problem.evaluate(theta, xi[i], es), theta);
  }

  // pool = [baseline..., perturbed(l=0, i=0..N-1), perturbed(l=1, ...), ...]
  std::vector<double> pool(baseline);
  pool.reserve((L + 1) * N);
  std::vector<double> point(theta.size());
  for (std::size_t l = 0; l < L; ++l) {
    kernels::add_scaled(theta, cfg.c, dirs.row(l), point);
    const RngStream row_stream = stream.derive(2).derive(l);
    for (std::size_t i = 0; i < N; ++i) {
      RngStream es = row_stream.derive(i);
      pool.push_back(checked(problem.evaluate(point, xi[i], es), point));
    }
  }
  out.evaluations_used = pool.size();
  if (cfg.standardize_rewards) apply_reward_scale(pool, out);

  const double denom = out.reward_scale * cfg.c * static_cast<double>(L * N);
  std::vector<double> weight(L, 0.0);
  for (std::size_t l = 0; l < L; ++l) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += pool[N + l * N + i] - baseline[i];
    weight[l] = s / denom;
  }
  out.vector = combine(dirs, weight);
  return out;
}

GradientEstimate estimate_at(const Problem& problem, std::span<const double> theta,
                             const EstimatorConfig& cfg, const DirectionSet& dirs,
                             const RngStream& stream) {
  cfg.validate();
  check_directions(dirs, cfg, theta.size());
  const std::size_t L = cfg.L;
  const std::size_t N = cfg.N;

  GradientEstimate out;
  out.config = cfg;

  std::vector<DataPoint> xi(N);
  for (std::size_t i = 0; i < N; ++i) {
    RngStream xs = stream.derive(0).derive(i);
    xi[i] = problem.sample(xs);
  }

  // pool = [plus(l, i) for all l, i..., minus(l, i) for all l, i...]
  std::vector<double> pool(2 * L * N);
  std::vector<double> point(theta.size());
  for (std::size_t l = 0; l < L; ++l) {
    kernels::add_scaled(theta, cfg.c, dirs.row(l), point);
    const RngStream plus_stream = stream.derive(2).derive(l);
    for (std::size_t i = 0; i < N; ++i) {
      RngStream es = plus_stream.derive(i);
      pool[l * N + i] = checked(problem.evaluate(point, xi[i], es), point);
    }
    kernels::add_scaled(theta, -cfg.c, dirs.row(l), point);
    const RngStream minus_stream = stream.derive(3).derive(l);
    for (std::size_t i = 0; i < N; ++i) {
      RngStream es = minus_stream.derive(i);
      pool[L * N + l * N + i] = checked(problem.evaluate(point, xi[i], es), point);
    }
  }
  out.evaluations_used = pool.size();
  if (cfg.standardize_rewards) apply_reward_scale(pool, out);

  const double denom = out.reward_scale * 2.0 * cfg.c * static_cast<double>(L * N);
  std::vector<double> weight(L, 0.0);
  for (std::size_t l = 0; l < L; ++l) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += pool[l * N + i] - pool[L * N + l * N + i];
    weight[l] = s / denom;
  }
  out.vector = combine(dirs, weight);
  return out;
}

GradientEstimate estimate(const Problem& problem, std::span<const double> theta,
                          const EstimatorConfig& cfg, const DirectionSet& dirs,
                          const RngStream& stream) {
  switch (cfg.kind) {
    case EstimatorKind::SingleGS:
      return estimate_gs_single(problem, theta, cfg.c, stream);
    case EstimatorKind::ForwardDifference:
      return estimate_fd(problem, theta, cfg, dirs, stream);
    case EstimatorKind::Antithetic:
      return estimate_at(problem, theta, cfg, dirs, stream);
  }
  throw UnsupportedError("unknown estimator kind");
}

MseDecomposition empirical_mse(const Problem& problem, std::span<const double> theta,
                               const EstimatorConfig& cfg, const SamplerSpec& spec,
                               std::size_t replications, const RngStream& stream) {
  if (replications < 2) throw PreconditionError("empirical_mse needs at least two replications");
  const std::vector<double> truth = problem.gradient(theta);
  const std::size_t d = theta.size();

  // Welford over the replications.
  std::vector<double> mean(d, 0.0);
  double m2 = 0.0;
  DirectionSet unused;
  for (std::size_t r = 0; r < replications; ++r) {
    const RngStream rep = stream.derive(r);
    const DirectionSet dirs = cfg.kind == EstimatorKind::SingleGS
                                  ? unused
                                  : sample_directions(spec, cfg.L, d, rep.derive(0));
    const GradientEstimate g = estimate(problem, theta, cfg, dirs, rep.derive(1));
    const double inv = 1.0 / static_cast<double>(r + 1);
    for (std::size_t j = 0; j < d; ++j) {
      const double before = g.vector[j] - mean[j];
      mean[j] += before * inv;
      m2 += before * (g.vector[j] - mean[j]);
    }
  }

  MseDecomposition out;
  for (std::size_t j = 0; j < d; ++j) {
    const double b = mean[j] - truth[j];
    out.squared_bias += b * b;
  }
  out.trace_variance = m2 / static_cast<double>(replications);
  out.total = out.squared_bias + out.trace_variance;
  return out;
}

}  // namespace gsmooth
