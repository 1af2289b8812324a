#include "gsmooth/theory.hpp"

#include <cmath>
#include <string>

#include "gsmooth/errors.hpp"

namespace gsmooth::theory {

Moments bernoulli_moments(double p, double m) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("bernoulli probability must lie in (0, 1)");
  if (!(m > 0.0)) throw ParameterError("bernoulli scale must be positive");
  const double q = p * (1.0 - p);
  return {q / (m * m), 3.0 + (1.0 - 6.0 * q) / q};
}

Moments distribution_moments(const SamplerSpec& spec) {
  switch (spec.kind) {
    case SamplerKind::GS:
    case SamplerKind::GSShrinkage:
      return {spec.gaussian_variance, 3.0};
    case SamplerKind::BeS:
    case SamplerKind::BeSShrinkage:
      return bernoulli_moments(spec.bernoulli_p, spec.bernoulli_scale);
    case SamplerKind::OrthogonalES:
    case SamplerKind::GuidedES:
      break;
  }
  throw UnsupportedError("moments are undefined for '" + std::string(to_string(spec.kind)) +
                         "': direction entries are not IID");
}

MseDecomposition fd_mse_closed_form(const Moments& moments, std::size_t L, std::size_t N,
                                    std::size_t d, const ProblemStatistics& stats) {
  if (L < 1 || N < 1 || d < 1) throw PreconditionError("fd_mse_closed_form requires L, N, d >= 1");
  const double s2 = moments.variance;
  const double k = moments.kurtosis;
  const double l = static_cast<double>(L);
  const double n = static_cast<double>(N);
  const double dd = static_cast<double>(d);
  const double bias_factor = (s2 - 1.0) * (s2 - 1.0);

  MseDecomposition out;
  out.gradient_term = (bias_factor + s2 * s2 * (dd + k - 2.0) / l) * stats.grad_norm_sq;
  out.noise_term = s2 * s2 * (dd + k - 1.0) / (l * n) * stats.noise_trace;
  out.total = out.gradient_term + out.noise_term;
  out.squared_bias = bias_factor * stats.grad_norm_sq;
  out.trace_variance = out.total - out.squared_bias;
  return out;
}

double gs_shrinkage_objective(double variance, std::size_t L, std::size_t d) {
  if (!(variance > 0.0)) throw ParameterError("variance must be positive");
  const double dev = variance - 1.0;
  return dev * dev + variance * variance * (static_cast<double>(d) + 1.0) / static_cast<double>(L);
}

double bes_shrinkage_objective(double p, double m, std::size_t L, std::size_t d) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("bernoulli probability must lie in (0, 1)");
  if (!(m > 0.0)) throw ParameterError("bernoulli scale must be positive");
  const double q = p * (1.0 - p);
  const double m2 = m * m;
  const double dev = q / m2 - 1.0;
  return dev * dev +
         q * q / (static_cast<double>(L) * m2 * m2) * (static_cast<double>(d) + 1.0 + (1.0 - 6.0 * q) / q);
}

double mse_gap_gss_vs_bess(std::size_t L, std::size_t N, std::size_t d, const ProblemStatistics& stats) {
  if (L < 1 || N < 1 || d < 1) throw PreconditionError("mse_gap_gss_vs_bess requires L, N, d >= 1");
  if (L + d <= 5) throw PreconditionError("mse_gap_gss_vs_bess requires L + d > 5");
  const double l = static_cast<double>(L);
  const double n = static_cast<double>(N);
  const double dd = static_cast<double>(d);
  const double lo = l + dd - 1.0;
  const double hi = l + dd + 1.0;
  const double noise_coeff = (l * l - 2.0 * l + 2.0 - (dd + 1.0) * (dd + 1.0)) / (n * lo * hi);
  return 2.0 * l / (lo * hi) * (stats.grad_norm_sq + noise_coeff * stats.noise_trace);
}

double convergence_bound(double M, double B, double Delta, double mu, std::size_t T) {
  if (!(B < 0.5)) {
    throw HypothesisError("convergence bound requires bias ratio B < 0.5 (got " + std::to_string(B) + ")");
  }
  if (M < 0.0 || B < 0.0 || Delta < 0.0) throw ParameterError("M, B and Delta must be non-negative");
  if (!(mu > 0.0)) throw ParameterError("smoothness mu must be positive");
  if (T < 1) throw ParameterError("T must be at least 1");
  return (M + 4.0 * Delta * mu) / ((1.0 - 2.0 * B) * std::sqrt(static_cast<double>(T)));
}

double trace_quartic_closed_form(const Moments& moments, std::size_t d, const Matrix& A) {
  if (A.rows() != d || A.cols() != d) throw PreconditionError("A must be d x d");
  const double s2 = moments.variance;
  return s2 * s2 * (static_cast<double>(d) + moments.kurtosis - 1.0) * A.trace();
}

}  // namespace gsmooth::theory
