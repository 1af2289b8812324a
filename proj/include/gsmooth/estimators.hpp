#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gsmooth/problems.hpp"
#include "gsmooth/rng.hpp"
#include "gsmooth/samplers.hpp"

namespace gsmooth {

enum class EstimatorKind { SingleGS, ForwardDifference, Antithetic };

std::string_view to_string(EstimatorKind kind);
/// "fd" or "at" (and "gs" for the single-direction Gaussian estimator).
std::optional<EstimatorKind> parse_estimator_kind(std::string_view name);

struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::ForwardDifference;
  double c = 0.01;  // finite-difference spacing
  std::size_t L = 1;
  std::size_t N = 1;
  bool standardize_rewards = false;

  /// Throws ParameterError unless c > 0, L >= 1, N >= 1.
  void validate() const;
};

/// Objective calls made by one estimate: (L + 1) N for FD (one baseline per
/// noise index, shared across directions), 2 L N for AT, 1 for single GS.
std::size_t evaluations_per_estimate(const EstimatorConfig& cfg);

struct GradientEstimate {
  std::vector<double> vector;
  EstimatorConfig config;
  std::size_t evaluations_used = 0;
  double reward_scale = 1.0;           // divisor applied to differences
  bool reward_scale_clamped = false;   // the pooled std fell below 1e-8
};

/// (1/c) f(theta + c eps, xi) eps, eps ~ N(0, I).
GradientEstimate estimate_gs_single(const Problem& problem, std::span<const double> theta, double c,
                                    const RngStream& stream);

/// Same estimator along a caller-chosen direction.
GradientEstimate estimate_gs_single(const Problem& problem, std::span<const double> theta, double c,
                                    std::span<const double> direction, const RngStream& stream);

/// (1 / (c L N)) sum_{l,i} (f(theta + c eps_l, xi_i) - f(theta, xi_i)) eps_l
GradientEstimate estimate_fd(const Problem& problem, std::span<const double> theta,
                             const EstimatorConfig& cfg, const DirectionSet& dirs,
                             const RngStream& stream);

/// (1 / (2 c L N)) sum_{l,i} (f(theta + c eps_l, xi_i) - f(theta - c eps_l, xi_i)) eps_l
GradientEstimate estimate_at(const Problem& problem, std::span<const double> theta,
                             const EstimatorConfig& cfg, const DirectionSet& dirs,
                             const RngStream& stream);

/// Dispatches on cfg.kind. For SingleGS the directions are ignored.
GradientEstimate estimate(const Problem& problem, std::span<const double> theta,
                          const EstimatorConfig& cfg, const DirectionSet& dirs,
                          const RngStream& stream);

/// Squared bias norm, trace of variance and their sum. The theoretical
/// decomposition also splits the total into the gradient-driven and
/// noise-driven parts; empirical decompositions leave those at zero.
struct MseDecomposition {
  double squared_bias = 0.0;
  double trace_variance = 0.0;
  double total = 0.0;
  double gradient_term = 0.0;
  double noise_term = 0.0;
};

/// Empirical MSE of R independent estimates against problem.gradient(theta),
/// with fresh directions and noise per replication. The variance trace uses
/// the 1/R normalization so that total == squared_bias + trace_variance.
MseDecomposition empirical_mse(const Problem& problem, std::span<const double> theta,
                               const EstimatorConfig& cfg, const SamplerSpec& spec,
                               std::size_t replications, const RngStream& stream);

}  // namespace gsmooth
