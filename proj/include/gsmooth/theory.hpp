#pragma once

// Closed forms for the forward-difference estimator in the c -> 0 limit,
// assuming direction entries are IID with mean zero.

#include <cstddef>

#include "gsmooth/estimators.hpp"
#include "gsmooth/linalg.hpp"
#include "gsmooth/samplers.hpp"

namespace gsmooth::theory {

/// Variance and kurtosis (fourth standardized moment) of one direction entry.
struct Moments {
  double variance = 1.0;
  double kurtosis = 3.0;
};

/// Inputs that depend on the objective at the current point.
struct ProblemStatistics {
  double grad_norm_sq = 0.0;  // |grad F(theta)|^2
  double noise_trace = 0.0;   // trace(Var_xi[grad f(theta, xi)])
};

/// (1, 3) for GS, (1, 1) for BeS, (L/(L+d+1), 3) for GS-shrinkage and
/// (L/(L+d-1), 1) for BeS-shrinkage, read off the SamplerSpec parameters.
/// Orthogonal and Guided ES have dependent entries: UnsupportedError.
Moments distribution_moments(const SamplerSpec& spec);

/// Moments of (B_p - p) / m.
Moments bernoulli_moments(double p, double m);

/// gradient_term = ((s2 - 1)^2 + s2^2 (d + k - 2) / L) |grad F|^2
/// noise_term    = s2^2 (d + k - 1) / (L N) * noise_trace
/// squared_bias  = (s2 - 1)^2 |grad F|^2
MseDecomposition fd_mse_closed_form(const Moments& moments, std::size_t L, std::size_t N,
                                    std::size_t d, const ProblemStatistics& stats);

/// (s2 - 1)^2 + s2^2 (d + 1) / L
double gs_shrinkage_objective(double variance, std::size_t L, std::size_t d);

/// (p(1-p)/m^2 - 1)^2 + p^2(1-p)^2 / (L m^4) * (d + 1 + (1 - 6p(1-p)) / (p(1-p)))
double bes_shrinkage_objective(double p, double m, std::size_t L, std::size_t d);

/// MSE(GS-shrinkage) - MSE(BeS-shrinkage). Positive when BeS-shrinkage has
/// the smaller closed-form MSE. Requires L + d > 5.
double mse_gap_gss_vs_bess(std::size_t L, std::size_t N, std::size_t d, const ProblemStatistics& stats);

/// (M + 4 Delta mu) / ((1 - 2B) sqrt(T)); HypothesisError if B >= 0.5.
double convergence_bound(double M, double B, double Delta, double mu, std::size_t T);

/// s2^2 (d + k - 1) trace(A) = trace(E[eps eps^T A eps eps^T]).
double trace_quartic_closed_form(const Moments& moments, std::size_t d, const Matrix& A);

}  // namespace gsmooth::theory
