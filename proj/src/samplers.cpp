#include "gsmooth/samplers.hpp"

#include <cmath>
#include <string>

#include "gsmooth/errors.hpp"
#include "gsmooth/kernels.hpp"

namespace gsmooth {
namespace {

constexpr int kOrthogonalRetries = 8;
constexpr std::uint64_t kRetryLabel = 0x0A7E'0000'0000ULL;

void fill_gaussian(std::span<double> row, double stddev, RngStream& s) {
  for (auto& v : row) v = stddev * s.normal();
}

void fill_bernoulli(std::span<double> row, double p, double m, RngStream& s) {
  const double hi = (1.0 - p) / m;
  const double lo = -p / m;
  for (auto& v : row) v = s.uniform() < p ? hi : lo;
}

Matrix gaussian_rows(std::size_t L, std::size_t d, double stddev, const RngStream& stream) {
  Matrix m(L, d);
  for (std::size_t l = 0; l < L; ++l) {
    RngStream s = stream.derive(l);
    fill_gaussian(m.row(l), stddev, s);
  }
  return m;
}

Matrix guided_rows(const SamplerSpec& spec, std::size_t L, std::size_t d, const RngStream& stream) {
  const double alpha = spec.effective_alpha();
  const double iso = std::sqrt(alpha / static_cast<double>(d));
  Matrix m = gaussian_rows(L, d, iso, stream);
  if (alpha >= 1.0 || spec.guided_buffer.empty()) return m;

  const OrthonormalBasis u = gram_schmidt(spec.guided_buffer);
  const double sub = std::sqrt((1.0 - alpha) / static_cast<double>(spec.guided_subspace_dim));
  for (std::size_t l = 0; l < L; ++l) {
    // Separate substream so the isotropic part matches the alpha = 1 draw.
    RngStream s = stream.derive(l).derive(1);
    for (std::size_t j = 0; j < u.basis.rows(); ++j) {
      kernels::axpy(sub * s.normal(), u.basis.row(j), m.row(l));
    }
  }
  return m;
}

}  // namespace

std::string_view to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::GS:
      return "gs";
    case SamplerKind::BeS:
      return "bes";
    case SamplerKind::GSShrinkage:
      return "gs-shrinkage";
    case SamplerKind::BeSShrinkage:
      return "bes-shrinkage";
    case SamplerKind::OrthogonalES:
      return "orthogonal";
    case SamplerKind::GuidedES:
      return "guided";
  }
  return "unknown";
}

std::optional<SamplerKind> parse_sampler_kind(std::string_view name) {
  for (auto kind : {SamplerKind::GS, SamplerKind::BeS, SamplerKind::GSShrinkage,
                    SamplerKind::BeSShrinkage, SamplerKind::OrthogonalES, SamplerKind::GuidedES}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

bool has_iid_entries(SamplerKind kind) {
  return kind != SamplerKind::OrthogonalES && kind != SamplerKind::GuidedES;
}

double gs_shrinkage_variance(std::size_t L, std::size_t d) {
  if (L < 1 || d < 1) throw PreconditionError("gs_shrinkage_variance requires L >= 1 and d >= 1");
  const double l = static_cast<double>(L);
  return l / (l + static_cast<double>(d) + 1.0);
}

double bes_shrinkage_scale(std::size_t L, std::size_t d) {
  if (L < 1 || d < 1) throw PreconditionError("bes_shrinkage_scale requires L >= 1 and d >= 1");
  if (L + d <= 5) {
    throw PreconditionError("bes_shrinkage_scale requires L + d > 5 (got L=" + std::to_string(L) +
                            ", d=" + std::to_string(d) + ")");
  }
  const double l = static_cast<double>(L);
  return std::sqrt((l + static_cast<double>(d) - 1.0) / (4.0 * l));
}

SamplerSpec make_sampler_spec(SamplerKind kind, std::size_t L, std::size_t d) {
  SamplerSpec spec;
  spec.kind = kind;
  switch (kind) {
    case SamplerKind::GS:
    case SamplerKind::BeS:
    case SamplerKind::OrthogonalES:
      break;
    case SamplerKind::GSShrinkage:
      spec.gaussian_variance = gs_shrinkage_variance(L, d);
      break;
    case SamplerKind::BeSShrinkage:
      spec.bernoulli_scale = bes_shrinkage_scale(L, d);
      break;
    case SamplerKind::GuidedES:
      spec.guided_subspace_dim = d >= 50 ? 50 : 10;
      break;
  }
  return spec;
}

DirectionSet sample_directions(const SamplerSpec& spec, std::size_t L, std::size_t d,
                               const RngStream& stream) {
  if (L < 1 || d < 1) throw PreconditionError("sample_directions requires L >= 1 and d >= 1");
  if (spec.kind == SamplerKind::BeSShrinkage && L + d <= 5) {
    throw PreconditionError("BeS-shrinkage requires L + d > 5");
  }

  DirectionSet out{Matrix(L, d), spec};
  switch (spec.kind) {
    case SamplerKind::GS:
    case SamplerKind::GSShrinkage: {
      if (!(spec.gaussian_variance > 0.0)) throw ParameterError("gaussian variance must be positive");
      out.directions = gaussian_rows(L, d, std::sqrt(spec.gaussian_variance), stream);
      break;
    }
    case SamplerKind::BeS:
    case SamplerKind::BeSShrinkage: {
      const double p = spec.bernoulli_p;
      const double m = spec.bernoulli_scale;
      if (!(p > 0.0 && p < 1.0)) throw ParameterError("bernoulli probability must lie in (0, 1)");
      if (!(m > 0.0)) throw ParameterError("bernoulli scale must be positive");
      for (std::size_t l = 0; l < L; ++l) {
        RngStream s = stream.derive(l);
        fill_bernoulli(out.directions.row(l), p, m, s);
      }
      break;
    }
    case SamplerKind::OrthogonalES: {
      for (int attempt = 0;; ++attempt) {
        const RngStream s = attempt == 0 ? stream : stream.derive(kRetryLabel + attempt);
        DirectionSet raw{gaussian_rows(L, d, 1.0, s), spec};
        try {
          return orthogonalize(raw);
        } catch (const RankDeficiencyError&) {
          if (attempt + 1 >= kOrthogonalRetries) throw;
        }
      }
    }
    case SamplerKind::GuidedES: {
      if (spec.guided_subspace_dim == 0) throw ParameterError("guided subspace dimension must be positive");
      out.directions = guided_rows(spec, L, d, stream);
      break;
    }
  }
  return out;
}

DirectionSet orthogonalize(const DirectionSet& raw) {
  const std::size_t L = raw.count();
  const std::size_t d = raw.dimension();
  DirectionSet out = raw;
  for (std::size_t start = 0; start < L; start += d) {
    const std::size_t stop = std::min(L, start + d);
    std::vector<std::vector<double>> block;
    std::vector<double> norms;
    for (std::size_t l = start; l < stop; ++l) {
      block.emplace_back(raw.row(l).begin(), raw.row(l).end());
      norms.push_back(std::sqrt(kernels::sum_squares(raw.row(l))));
    }
    const OrthonormalBasis q = gram_schmidt(block);
    if (!q.dependent.empty()) {
      const std::size_t row = start + q.dependent.front();
      throw RankDeficiencyError("direction " + std::to_string(row) +
                                    " is numerically dependent on earlier directions",
                                row);
    }
    for (std::size_t i = 0; i < block.size(); ++i) {
      auto dst = out.directions.row(start + i);
      auto src = q.basis.row(i);
      for (std::size_t j = 0; j < d; ++j) dst[j] = norms[i] * src[j];
    }
  }
  return out;
}

SamplerSpec guided_update(SamplerSpec spec, std::span<const double> gradient) {
  if (kernels::sum_squares(gradient) == 0.0) return spec;
  spec.guided_buffer.emplace_back(gradient.begin(), gradient.end());
  const std::size_t k = spec.guided_subspace_dim;
  while (k > 0 && spec.guided_buffer.size() > k) spec.guided_buffer.erase(spec.guided_buffer.begin());
  if (k > 0 && spec.guided_buffer.size() >= k) spec.guided_warm = true;
  return spec;
}

}  // namespace gsmooth
