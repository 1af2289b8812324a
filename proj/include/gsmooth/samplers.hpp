#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gsmooth/linalg.hpp"
#include "gsmooth/rng.hpp"

namespace gsmooth {

enum class SamplerKind { GS, BeS, GSShrinkage, BeSShrinkage, OrthogonalES, GuidedES };

std::string_view to_string(SamplerKind kind);
/// Accepts the CLI names: gs, bes, gs-shrinkage, bes-shrinkage, orthogonal, guided.
std::optional<SamplerKind> parse_sampler_kind(std::string_view name);

/// True for the kinds whose direction entries are IID (all but Orthogonal
/// and Guided ES).
bool has_iid_entries(SamplerKind kind);

/// Distribution that generates perturbation directions, plus the run-local
/// gradient history used by Guided ES.
struct SamplerSpec {
  SamplerKind kind = SamplerKind::GS;
  double gaussian_variance = 1.0;  // GS family
  double bernoulli_p = 0.5;        // Bernoulli family
  double bernoulli_scale = 0.5;
  double guided_alpha = 0.5;            // alpha after warm-up
  std::size_t guided_subspace_dim = 0;  // k
  std::vector<std::vector<double>> guided_buffer;  // oldest first
  bool guided_warm = false;  // set once the buffer first fills

  /// Alpha used for the next draw: 1 until the buffer has been full once.
  double effective_alpha() const { return guided_warm ? guided_alpha : 1.0; }
};

/// Variance minimizing the gradient term of the FD estimator MSE for
/// Gaussian entries: L / (L + d + 1).
double gs_shrinkage_variance(std::size_t L, std::size_t d);

/// Bernoulli scale m* = sqrt((L + d - 1) / (4L)) at p = 0.5. Requires
/// L + d > 5; throws PreconditionError otherwise.
double bes_shrinkage_scale(std::size_t L, std::size_t d);

/// Builds the spec for `kind` under a run with L directions in dimension d.
/// Shrinkage parameters and the Guided ES subspace size are derived here.
SamplerSpec make_sampler_spec(SamplerKind kind, std::size_t L, std::size_t d);

/// L x d matrix of directions, one per row.
struct DirectionSet {
  Matrix directions;
  SamplerSpec spec;

  std::size_t count() const noexcept { return directions.rows(); }
  std::size_t dimension() const noexcept { return directions.cols(); }
  std::span<const double> row(std::size_t l) const { return directions.row(l); }
};

DirectionSet sample_directions(const SamplerSpec& spec, std::size_t L, std::size_t d,
                               const RngStream& stream);

/// Gram-Schmidt in blocks of d rows; each output row keeps the Euclidean norm
/// of its input row. Throws RankDeficiencyError when a row's residual after
/// projection is below 1e-12 of its norm.
DirectionSet orthogonalize(const DirectionSet& raw);

/// Appends a gradient estimate to the Guided ES history (FIFO of size k).
/// Zero-norm gradients are ignored.
SamplerSpec guided_update(SamplerSpec spec, std::span<const double> gradient);

}  // namespace gsmooth
