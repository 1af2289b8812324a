#include <doctest.h>

#include <cmath>

#include "gsmooth/errors.hpp"
#include "gsmooth/kernels.hpp"
#include "gsmooth/samplers.hpp"
#include "gsmooth/theory.hpp"
#include "helpers.hpp"

using namespace gsmooth;
using gsmooth::testing::moments;

namespace {

std::vector<double> pooled_entries(const SamplerSpec& spec, std::size_t L, std::size_t d,
                                   std::size_t target, std::uint64_t seed) {
  std::vector<double> out;
  out.reserve(target + L * d);
  const RngStream root(seed);
  for (std::uint64_t r = 0; out.size() < target; ++r) {
    const DirectionSet dirs = sample_directions(spec, L, d, root.derive(r));
    for (double v : dirs.directions.data()) out.push_back(v);
  }
  return out;
}

// Sample covariance of rows drawn from repeated calls, assuming zero mean.
Matrix covariance(const SamplerSpec& spec, std::size_t L, std::size_t d, std::size_t calls,
                  std::uint64_t seed) {
  Matrix acc(d, d);
  const RngStream root(seed);
  for (std::size_t r = 0; r < calls; ++r) {
    const DirectionSet dirs = sample_directions(spec, L, d, root.derive(r));
    for (std::size_t l = 0; l < L; ++l) {
      const auto row = dirs.row(l);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) acc(i, j) += row[i] * row[j];
      }
    }
  }
  for (auto& v : acc.data()) v /= static_cast<double>(calls * L);
  return acc;
}

}  // namespace

TEST_CASE("gs_shrinkage_variance") {
  CHECK(gs_shrinkage_variance(2, 100) == doctest::Approx(2.0 / 103.0).epsilon(1e-14));
  CHECK(gs_shrinkage_variance(2, 100) == doctest::Approx(0.0194175).epsilon(1e-5));
  CHECK(std::abs(gs_shrinkage_variance(1000000000, 100) - 1.0) < 1e-6);
  CHECK(gs_shrinkage_variance(1, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  for (std::size_t L : {1u, 5u, 300u}) {
    for (std::size_t d : {1u, 10u, 1000u}) {
      const double v = gs_shrinkage_variance(L, d);
      CHECK(v > 0.0);
      CHECK(v < 1.0);
    }
  }
}

TEST_CASE("bes_shrinkage_scale") {
  CHECK(bes_shrinkage_scale(2, 100) == doctest::Approx(std::sqrt(101.0 / 8.0)).epsilon(1e-14));
  CHECK(bes_shrinkage_scale(2, 100) == doctest::Approx(3.5532).epsilon(1e-4));
  CHECK(bes_shrinkage_scale(1, 5) == doctest::Approx(1.1180).epsilon(1e-4));
  CHECK_THROWS_AS(bes_shrinkage_scale(2, 3), PreconditionError);
  // p(1-p)/m^2 = L/(L+d-1) < 1
  for (auto [L, d] : {std::pair<std::size_t, std::size_t>{2, 100}, {6, 20}, {1, 5}}) {
    const double m = bes_shrinkage_scale(L, d);
    const double var = 0.25 / (m * m);
    CHECK(var == doctest::Approx(double(L) / double(L + d - 1)).epsilon(1e-14));
    CHECK(var < 1.0);
  }
}

TEST_CASE("make_sampler_spec derives parameters from L and d") {
  CHECK(make_sampler_spec(SamplerKind::GS, 2, 100).gaussian_variance == 1.0);
  const auto bes = make_sampler_spec(SamplerKind::BeS, 2, 100);
  CHECK(bes.bernoulli_p == 0.5);
  CHECK(bes.bernoulli_scale == 0.5);
  CHECK(make_sampler_spec(SamplerKind::GSShrinkage, 6, 100).gaussian_variance ==
        doctest::Approx(6.0 / 107.0));
  const auto bess = make_sampler_spec(SamplerKind::BeSShrinkage, 2, 100);
  CHECK(bess.bernoulli_p == 0.5);
  CHECK(bess.bernoulli_scale == doctest::Approx(std::sqrt(101.0 / 8.0)));
  CHECK(make_sampler_spec(SamplerKind::GuidedES, 1, 100).guided_subspace_dim == 50);
  CHECK(make_sampler_spec(SamplerKind::GuidedES, 1, 50).guided_subspace_dim == 50);
  CHECK(make_sampler_spec(SamplerKind::GuidedES, 1, 49).guided_subspace_dim == 10);
  CHECK(make_sampler_spec(SamplerKind::GuidedES, 1, 10).guided_alpha == 0.5);
  CHECK_THROWS_AS(make_sampler_spec(SamplerKind::BeSShrinkage, 1, 4), PreconditionError);
}

TEST_CASE("sampler names round-trip") {
  for (auto kind : {SamplerKind::GS, SamplerKind::BeS, SamplerKind::GSShrinkage,
                    SamplerKind::BeSShrinkage, SamplerKind::OrthogonalES, SamplerKind::GuidedES}) {
    CHECK(parse_sampler_kind(to_string(kind)) == kind);
  }
  CHECK(!parse_sampler_kind("cma-es"));
  CHECK(has_iid_entries(SamplerKind::BeSShrinkage));
  CHECK(!has_iid_entries(SamplerKind::OrthogonalES));
  CHECK(!has_iid_entries(SamplerKind::GuidedES));
}

TEST_CASE("BeS directions are signs") {
  const auto spec = make_sampler_spec(SamplerKind::BeS, 7, 13);
  const auto dirs = sample_directions(spec, 7, 13, RngStream(1));
  CHECK(dirs.count() == 7);
  CHECK(dirs.dimension() == 13);
  for (double v : dirs.directions.data()) REQUIRE((v == 1.0 || v == -1.0));
}

TEST_CASE("GS-shrinkage pooled variance") {
  const auto spec = make_sampler_spec(SamplerKind::GSShrinkage, 6, 100);
  const auto xs = pooled_entries(spec, 6, 100, 1000000, 2);
  CHECK(moments(xs).variance == doctest::Approx(6.0 / 107.0).epsilon(0.01));
}

TEST_CASE("IID kinds: zero mean and moments match the closed form") {
  struct Case {
    SamplerKind kind;
    std::size_t L, d;
  };
  for (const Case c : {Case{SamplerKind::GS, 2, 100}, Case{SamplerKind::BeS, 2, 100},
                       Case{SamplerKind::GSShrinkage, 6, 20}, Case{SamplerKind::BeSShrinkage, 2, 100}}) {
    CAPTURE(to_string(c.kind));
    const auto spec = make_sampler_spec(c.kind, c.L, c.d);
    const auto xs = pooled_entries(spec, c.L, c.d, 1000000, 3);
    const double n = static_cast<double>(xs.size());
    const auto mo = gsmooth::testing::raw_moments(xs);
    const auto want = theory::distribution_moments(spec);
    const double s2 = want.variance;
    const double k = want.kurtosis;
    // Standard errors under the target law. Moments are taken about zero, so
    // the two-point law has no spread in its variance or kurtosis.
    const double se_mean = std::sqrt(s2 / n);
    const double se_var = s2 * std::sqrt((k - 1.0) / n);
    const double se_kurt = k == 3.0 ? std::sqrt(24.0 / n) : 0.0;
    CHECK(std::abs(mo.mean) <= 3.0 * se_mean);
    CHECK(std::abs(mo.variance - s2) <= 3.0 * se_var + 1e-12);
    CHECK(std::abs(mo.kurtosis - k) <= 3.0 * se_kurt + 1e-9);
  }
}

TEST_CASE("sample_directions is deterministic per stream") {
  for (auto kind : {SamplerKind::GS, SamplerKind::BeS, SamplerKind::OrthogonalES, SamplerKind::GuidedES}) {
    const auto spec = make_sampler_spec(kind, 4, 12);
    const auto a = sample_directions(spec, 4, 12, RngStream(8).derive(3));
    const auto b = sample_directions(spec, 4, 12, RngStream(8).derive(3));
    const auto c = sample_directions(spec, 4, 12, RngStream(8).derive(4));
    CHECK(a.directions == b.directions);
    CHECK(a.directions != c.directions);
  }
}

TEST_CASE("sample_directions preconditions") {
  const auto gs = make_sampler_spec(SamplerKind::GS, 1, 1);
  CHECK_THROWS_AS(sample_directions(gs, 0, 3, RngStream(0)), PreconditionError);
  CHECK_THROWS_AS(sample_directions(gs, 3, 0, RngStream(0)), PreconditionError);
  SamplerSpec bess;
  bess.kind = SamplerKind::BeSShrinkage;
  CHECK_THROWS_AS(sample_directions(bess, 2, 3, RngStream(0)), PreconditionError);
}

TEST_CASE("orthogonalize examples") {
  DirectionSet one{Matrix(1, 4), {}};
  one.directions(0, 0) = 3.0;
  one.directions(0, 2) = -1.0;
  CHECK(orthogonalize(one).directions == one.directions);

  DirectionSet tri{Matrix(3, 3), {}};
  tri.directions(0, 0) = 1.0;
  tri.directions(1, 0) = 1.0;
  tri.directions(1, 1) = 1.0;
  tri.directions(2, 0) = 1.0;
  tri.directions(2, 1) = 1.0;
  tri.directions(2, 2) = 1.0;
  const auto out = orthogonalize(tri);
  const double want[3][3] = {{1, 0, 0}, {0, std::sqrt(2.0), 0}, {0, 0, std::sqrt(3.0)}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(out.directions(i, j) == doctest::Approx(want[i][j]).epsilon(1e-12));
  }
}

TEST_CASE("orthogonalize reports rank deficiency") {
  DirectionSet raw{Matrix(3, 3), {}};
  raw.directions(0, 0) = 1.0;
  raw.directions(1, 1) = 1.0;
  raw.directions(2, 0) = 2.0;
  raw.directions(2, 1) = -3.0;
  try {
    orthogonalize(raw);
    FAIL("expected RankDeficiencyError");
  } catch (const RankDeficiencyError& e) {
    CHECK(e.row() == 2);
  }
}

TEST_CASE("orthogonal ES rows are orthogonal and keep Gaussian norms") {
  const auto spec = make_sampler_spec(SamplerKind::OrthogonalES, 1, 1);
  RngStream pick(99);
  for (int c = 0; c < 100; ++c) {
    const std::size_t d = 1 + static_cast<std::size_t>(pick.uniform() * 60);
    const std::size_t L = 1 + static_cast<std::size_t>(pick.uniform() * static_cast<double>(d));
    CAPTURE(L);
    CAPTURE(d);
    const auto dirs = sample_directions(spec, L, d, RngStream(1000 + c));
    for (std::size_t i = 0; i < L; ++i) {
      for (std::size_t j = i + 1; j < L; ++j) REQUIRE(std::abs(kernels::dot(dirs.row(i), dirs.row(j))) < 1e-8);
    }
  }
  const auto d5 = sample_directions(spec, 5, 50, RngStream(4));
  double max_dot = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      if (i != j) max_dot = std::max(max_dot, std::abs(kernels::dot(d5.row(i), d5.row(j))));
    }
  }
  CHECK(max_dot < 1e-8);

  // Norms match a plain Gaussian draw on the same stream.
  const auto gs = sample_directions(make_sampler_spec(SamplerKind::GS, 5, 50), 5, 50, RngStream(4));
  for (std::size_t l = 0; l < 5; ++l) {
    CHECK(kernels::sum_squares(d5.row(l)) == doctest::Approx(kernels::sum_squares(gs.row(l))).epsilon(1e-12));
  }
}

TEST_CASE("orthogonal ES with L > d orthogonalizes blocks of d rows") {
  const auto spec = make_sampler_spec(SamplerKind::OrthogonalES, 1, 1);
  const auto dirs = sample_directions(spec, 7, 3, RngStream(5));
  for (std::size_t start : {0u, 3u}) {
    for (std::size_t i = start; i < start + 3; ++i) {
      for (std::size_t j = i + 1; j < start + 3; ++j) CHECK(std::abs(kernels::dot(dirs.row(i), dirs.row(j))) < 1e-8);
    }
  }
  CHECK(std::isfinite(dirs.directions(6, 0)));
}

TEST_CASE("guided_update buffer and alpha schedule") {
  SamplerSpec spec = make_sampler_spec(SamplerKind::GuidedES, 1, 3);
  spec.guided_subspace_dim = 2;
  const std::vector<double> g1{1, 0, 0}, g2{0, 1, 0}, g3{0, 0, 1}, zero{0, 0, 0};
  spec = guided_update(spec, g1);
  CHECK(spec.guided_buffer.size() == 1);
  CHECK(spec.effective_alpha() == 1.0);
  spec = guided_update(spec, zero);
  CHECK(spec.guided_buffer.size() == 1);
  spec = guided_update(spec, g2);
  CHECK(spec.effective_alpha() == 0.5);
  spec = guided_update(spec, g3);
  REQUIRE(spec.guided_buffer.size() == 2);
  CHECK(spec.guided_buffer[0] == g2);
  CHECK(spec.guided_buffer[1] == g3);
  CHECK(spec.effective_alpha() == 0.5);
}

TEST_CASE("guided ES covariance during warm-up is I/d") {
  const std::size_t d = 10;
  const auto spec = make_sampler_spec(SamplerKind::GuidedES, 100, d);
  const Matrix cov = covariance(spec, 100, d, 10000, 6);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) CHECK(std::abs(cov(i, j) - (i == j ? 0.1 : 0.0)) < 0.01);
  }
}

TEST_CASE("guided ES covariance with a full buffer") {
  const std::size_t d = 6;
  SamplerSpec spec = make_sampler_spec(SamplerKind::GuidedES, 1, d);
  spec.guided_subspace_dim = 2;
  // Orthonormal U = [e0, (e1 + e2)/sqrt2].
  const double r = 1.0 / std::sqrt(2.0);
  spec = guided_update(spec, std::vector<double>{1, 0, 0, 0, 0, 0});
  spec = guided_update(spec, std::vector<double>{0, r, r, 0, 0, 0});
  REQUIRE(spec.guided_warm);
  const double alpha = spec.guided_alpha;
  Matrix want = Matrix::identity(d);
  for (auto& v : want.data()) v *= alpha / d;
  const double w = (1.0 - alpha) / 2.0;
  want(0, 0) += w;
  want(1, 1) += w * 0.5;
  want(2, 2) += w * 0.5;
  want(1, 2) += w * 0.5;
  want(2, 1) += w * 0.5;
  const Matrix cov = covariance(spec, 100, d, 10000, 7);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) CHECK(std::abs(cov(i, j) - want(i, j)) < 0.01);
  }
}
