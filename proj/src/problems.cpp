#include "gsmooth/problems.hpp"

#include <cmath>
#include <string>

#include "gsmooth/errors.hpp"
#include "gsmooth/kernels.hpp"

namespace gsmooth {

DataPoint Problem::sample(RngStream&) const { return {}; }

double Problem::objective(std::span<const double>) const {
  throw UnsupportedError("problem has no exact objective");
}

std::vector<double> Problem::gradient(std::span<const double>) const {
  throw UnsupportedError("problem has no analytic gradient");
}

// ---------------------------------------------------------------------------
// Linear regression

namespace {

std::vector<double> draw_gamma(RngStream& stream, std::size_t d) {
  std::vector<double> gamma(d);
  for (auto& g : gamma) g = 2.0 * stream.uniform();
  return gamma;
}

// Q gamma = V diag(gamma) V^T gamma for one explicit rotation.
std::vector<double> q_times_gamma(const Matrix& v, std::span<const double> gamma) {
  const std::size_t d = gamma.size();
  std::vector<double> t(d, 0.0);  // V^T gamma
  for (std::size_t i = 0; i < d; ++i) kernels::axpy(gamma[i], v.row(i), t);
  for (std::size_t j = 0; j < d; ++j) t[j] *= gamma[j];
  std::vector<double> out(d);
  for (std::size_t i = 0; i < d; ++i) out[i] = kernels::dot(v.row(i), t);
  return out;
}

std::vector<double> unit_normal(RngStream& stream, std::size_t d) {
  std::vector<double> u(d);
  double norm_sq = 0.0;
  do {
    for (auto& x : u) x = stream.normal();
    norm_sq = kernels::sum_squares(u);
  } while (norm_sq == 0.0);
  kernels::scale(1.0 / std::sqrt(norm_sq), u);
  return u;
}

// Same law as q_times_gamma with V Haar on SO(d), d >= 3, in O(d). With
// u = V^T gamma / |gamma| uniform on the sphere, write gamma * u = a u + r
// (elementwise product), r orthogonal to u. Then V u = gamma / |gamma| and,
// given u, V r is uniform on the radius-|r| sphere orthogonal to gamma.
std::vector<double> q_times_gamma_rotation_free(RngStream& stream, std::span<const double> gamma) {
  const std::size_t d = gamma.size();
  const double gnorm = std::sqrt(kernels::sum_squares(gamma));
  std::vector<double> out(d, 0.0);
  if (gnorm == 0.0) return out;
  const std::vector<double> u = unit_normal(stream, d);
  std::vector<double> r(d);
  for (std::size_t j = 0; j < d; ++j) r[j] = gamma[j] * u[j];
  const double a = kernels::dot(r, u);
  kernels::axpy(-a, u, r);
  const double rnorm = std::sqrt(kernels::sum_squares(r));

  std::vector<double> ghat(gamma.begin(), gamma.end());
  kernels::scale(1.0 / gnorm, ghat);
  std::vector<double> s = unit_normal(stream, d);
  kernels::axpy(-kernels::dot(s, ghat), ghat, s);
  const double snorm = std::sqrt(kernels::sum_squares(s));
  kernels::axpy(gnorm * a, ghat, out);
  if (snorm > 0.0) kernels::axpy(gnorm * rnorm / snorm, s, out);
  return out;
}

}  // namespace

DataPoint linreg_sample_point(RngStream& stream, std::size_t d, PointSampling mode) {
  if (d < 1) throw PreconditionError("linreg_sample_point requires d >= 1");
  const std::vector<double> gamma = draw_gamma(stream, d);
  const double noise_var = 2.0 * stream.uniform();

  DataPoint p;
  p.x.resize(d);
  if (mode == PointSampling::ExplicitRotation) {
    const Matrix v = haar_rotation(stream, d);
    std::vector<double> w(d);
    for (std::size_t j = 0; j < d; ++j) w[j] = std::sqrt(gamma[j]) * stream.normal();
    for (std::size_t i = 0; i < d; ++i) p.x[i] = kernels::dot(v.row(i), w);
  } else {
    double radius_sq = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double z = stream.normal();
      radius_sq += gamma[j] * z * z;
    }
    if (d == 1) {
      // SO(1) is trivial, so x = sqrt(gamma) z; recover the sign of z.
      p.x[0] = std::sqrt(radius_sq) * (stream.uniform() < 0.5 ? -1.0 : 1.0);
    } else {
      double norm_sq = 0.0;
      do {
        for (auto& u : p.x) u = stream.normal();
        norm_sq = kernels::sum_squares(p.x);
      } while (norm_sq == 0.0);
      kernels::scale(std::sqrt(radius_sq / norm_sq), p.x);
    }
  }
  p.y = kernels::dot(gamma, p.x) + std::sqrt(noise_var) * stream.normal();
  return p;
}

double linreg_loss(std::span<const double> theta, const DataPoint& point) {
  const double r = point.y - kernels::dot(theta, point.x);
  return 0.5 * r * r;
}

std::vector<double> linreg_point_gradient(std::span<const double> theta, const DataPoint& point) {
  const double r = point.y - kernels::dot(theta, point.x);
  std::vector<double> g(point.x.size(), 0.0);
  kernels::axpy(-r, point.x, g);
  return g;
}

LinRegModel::LinRegModel(std::size_t d, RngStream stream, std::size_t mc_samples, PointSampling mode)
    : d_(d), mc_samples_(mc_samples), mode_(mode), mean_qgamma_(d, 0.0) {
  if (d < 1) throw PreconditionError("linear regression requires d >= 1");
  if (mc_samples < 1) throw PreconditionError("E[Q gamma] estimate needs at least one sample");
  for (std::size_t s = 0; s < mc_samples; ++s) {
    RngStream sub = stream.derive(s);
    const std::vector<double> gamma = draw_gamma(sub, d);
    if (mode == PointSampling::RotationFree && d >= 3) {
      kernels::axpy(1.0, q_times_gamma_rotation_free(sub, gamma), mean_qgamma_);
    } else {
      const Matrix v = haar_rotation(sub, d);
      kernels::axpy(1.0, q_times_gamma(v, gamma), mean_qgamma_);
    }
  }
  kernels::scale(1.0 / static_cast<double>(mc_samples), mean_qgamma_);
}

DataPoint LinRegModel::sample(RngStream& stream) const { return linreg_sample_point(stream, d_, mode_); }

double LinRegModel::evaluate(std::span<const double> theta, const DataPoint& xi, RngStream&) const {
  return linreg_loss(theta, xi);
}

double LinRegModel::objective(std::span<const double> theta) const {
  const double d = static_cast<double>(d_);
  const double constant = 0.5 * (2.0 + 4.0 * (d - 1.0) / 3.0) + 0.5;
  return 0.5 * kernels::sum_squares(theta) - kernels::dot(mean_qgamma_, theta) + constant;
}

std::vector<double> LinRegModel::gradient(std::span<const double> theta) const {
  std::vector<double> g(theta.begin(), theta.end());
  kernels::axpy(-1.0, mean_qgamma_, g);
  return g;
}

std::vector<double> linreg_analytic_gradient(const LinRegModel& model, std::span<const double> theta) {
  return model.gradient(theta);
}

namespace {

// Welford accumulation of the trace of a vector covariance.
class TraceAccumulator {
 public:
  explicit TraceAccumulator(std::size_t d) : mean_(d, 0.0) {}

  void add(std::span<const double> g) {
    ++count_;
    const double inv = 1.0 / static_cast<double>(count_);
    double m2 = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double before = g[j] - mean_[j];
      mean_[j] += before * inv;
      m2 += before * (g[j] - mean_[j]);
    }
    m2_ += m2;
  }

  double trace() const { return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1); }

 private:
  std::size_t count_ = 0;
  double m2_ = 0.0;
  std::vector<double> mean_;
};

}  // namespace

double linreg_noise_trace(const LinRegModel& model, std::span<const double> theta, std::size_t mc,
                          RngStream& stream) {
  if (mc < 2) throw PreconditionError("noise trace needs at least two samples");
  TraceAccumulator acc(model.dimension());
  for (std::size_t k = 0; k < mc; ++k) {
    const DataPoint p = model.sample(stream);
    acc.add(linreg_point_gradient(theta, p));
  }
  return acc.trace();
}

double linreg_noise_trace(std::span<const double> theta, std::span<const DataPoint> points) {
  if (points.size() < 2) throw PreconditionError("noise trace needs at least two samples");
  TraceAccumulator acc(theta.size());
  for (const auto& p : points) acc.add(linreg_point_gradient(theta, p));
  return acc.trace();
}

double mean_loss(std::span<const double> theta, std::span<const DataPoint> points) {
  if (points.empty()) return 0.0;
  double s = 0.0;
  for (const auto& p : points) s += linreg_loss(theta, p);
  return s / static_cast<double>(points.size());
}

// ---------------------------------------------------------------------------
// DFO benchmarks

std::string_view to_string(DfoFunction f) {
  switch (f) {
    case DfoFunction::Sphere:
      return "sphere";
    case DfoFunction::Rosenbrock:
      return "rosenbrock";
    case DfoFunction::Cigar:
      return "cigar";
    case DfoFunction::Hm:
      return "hm";
  }
  return "unknown";
}

std::optional<DfoFunction> parse_dfo_function(std::string_view name) {
  for (auto f : {DfoFunction::Sphere, DfoFunction::Rosenbrock, DfoFunction::Cigar, DfoFunction::Hm}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

double dfo_value(const DfoObjective& obj, std::span<const double> theta) {
  if (theta.size() != obj.d) {
    throw PreconditionError("dfo_value: expected dimension " + std::to_string(obj.d) + ", got " +
                            std::to_string(theta.size()));
  }
  switch (obj.function) {
    case DfoFunction::Sphere:
      return kernels::sum_squares(theta);
    case DfoFunction::Rosenbrock: {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < theta.size(); ++i) {
        const double a = theta[i + 1] - theta[i] * theta[i];
        const double b = theta[i] - 1.0;
        s += 100.0 * a * a + b * b;
      }
      return s;
    }
    case DfoFunction::Cigar: {
      if (theta.empty()) return 0.0;
      return theta[0] * theta[0] + 1e6 * kernels::sum_squares(theta.subspan(1));
    }
    case DfoFunction::Hm: {
      double s = 0.0;
      for (double t : theta) {
        if (t != 0.0) s += t * t * (1.1 + std::cos(1.0 / t));
      }
      return s;
    }
  }
  return 0.0;
}

double dfo_noisy_eval(const DfoObjective& obj, std::span<const double> theta, RngStream& stream) {
  const double value = dfo_value(obj, theta);
  if (obj.noise_level == 0.0) return value;
  return value + obj.noise_level * stream.normal();
}

double DfoProblem::evaluate(std::span<const double> theta, const DataPoint&, RngStream& stream) const {
  return dfo_noisy_eval(obj_, theta, stream);
}

double DfoProblem::objective(std::span<const double> theta) const { return dfo_value(obj_, theta); }

}  // namespace gsmooth
