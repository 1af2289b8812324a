#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gsmooth/rng.hpp"

namespace gsmooth {

/// The random input xi shared by all evaluations that use the same noise
/// index i. For linear regression it is a data point; problems with no shared
/// randomness leave it empty.
struct DataPoint {
  std::vector<double> x;
  double y = 0.0;
};

/// Black-box objective F(theta) = E_xi f(theta, xi).
class Problem {
 public:
  struct Capabilities {
    bool noisy_eval = true;
    bool exact_objective = false;
    bool analytic_gradient = false;
  };

  virtual ~Problem() = default;

  virtual std::size_t dimension() const = 0;
  virtual Capabilities capabilities() const = 0;

  /// Draws xi.
  virtual DataPoint sample(RngStream& stream) const;

  /// f(theta, xi). `stream` supplies per-call evaluation noise, if any.
  virtual double evaluate(std::span<const double> theta, const DataPoint& xi,
                          RngStream& stream) const = 0;

  /// F(theta); throws UnsupportedError unless exact_objective.
  virtual double objective(std::span<const double> theta) const;

  /// grad F(theta); throws UnsupportedError unless analytic_gradient.
  virtual std::vector<double> gradient(std::span<const double> theta) const;
};

// ---------------------------------------------------------------------------
// Linear regression
//
//   y = gamma^T x + e,  e ~ N(0, s2),  x ~ N(0, Q),  Q = V diag(gamma) V^T,
//   gamma ~ U([0,2]^d),  s2 ~ U([0,2]),  V ~ U(SO(d)),
//
// with (gamma, s2, V) redrawn for every data point.
// ---------------------------------------------------------------------------

enum class PointSampling {
  // x = |diag(sqrt(gamma)) z| u with u uniform on the sphere. For Haar V and
  // fixed w, V w is uniform on the sphere of radius |w|, so this has exactly
  // the law of V diag(sqrt(gamma)) z at O(d) cost.
  RotationFree,
  // Draws V explicitly through haar_rotation(). O(d^3) per point.
  ExplicitRotation,
};

DataPoint linreg_sample_point(RngStream& stream, std::size_t d,
                              PointSampling mode = PointSampling::RotationFree);

/// (y - theta^T x)^2 / 2
double linreg_loss(std::span<const double> theta, const DataPoint& point);

/// Per-point loss gradient -(y - theta^T x) x.
std::vector<double> linreg_point_gradient(std::span<const double> theta, const DataPoint& point);

class LinRegModel final : public Problem {
 public:
  /// Estimates E[Q gamma] from `mc_samples` explicit draws of (gamma, V).
  LinRegModel(std::size_t d, RngStream stream, std::size_t mc_samples = 1000,
              PointSampling mode = PointSampling::RotationFree);

  std::size_t dimension() const override { return d_; }
  Capabilities capabilities() const override { return {true, true, true}; }
  DataPoint sample(RngStream& stream) const override;
  double evaluate(std::span<const double> theta, const DataPoint& xi,
                  RngStream& stream) const override;

  /// Expected loss |theta|^2/2 - mean_Qgamma^T theta + E[gamma^T Q gamma + s2]/2.
  /// The constant is exact: E[gamma^T Q gamma] = 2 + 4(d-1)/3, E[s2] = 1.
  double objective(std::span<const double> theta) const override;

  /// theta - mean_Qgamma
  std::vector<double> gradient(std::span<const double> theta) const override;

  std::size_t mc_samples() const noexcept { return mc_samples_; }
  const std::vector<double>& mean_Qgamma() const noexcept { return mean_qgamma_; }
  PointSampling sampling() const noexcept { return mode_; }

 private:
  std::size_t d_;
  std::size_t mc_samples_;
  PointSampling mode_;
  std::vector<double> mean_qgamma_;
};

std::vector<double> linreg_analytic_gradient(const LinRegModel& model, std::span<const double> theta);

/// Monte-Carlo trace of Var_xi[grad f(theta, xi)] over `mc` fresh points.
/// Throws PreconditionError if mc < 2.
double linreg_noise_trace(const LinRegModel& model, std::span<const double> theta, std::size_t mc,
                          RngStream& stream);

/// Same estimate over a caller-supplied set of points.
double linreg_noise_trace(std::span<const double> theta, std::span<const DataPoint> points);

/// Mean loss over a fixed data set.
double mean_loss(std::span<const double> theta, std::span<const DataPoint> points);

// ---------------------------------------------------------------------------
// Noisy DFO benchmark objectives
// ---------------------------------------------------------------------------

enum class DfoFunction { Sphere, Rosenbrock, Cigar, Hm };

std::string_view to_string(DfoFunction f);
std::optional<DfoFunction> parse_dfo_function(std::string_view name);

struct DfoObjective {
  DfoFunction function = DfoFunction::Sphere;
  std::size_t d = 10;
  double noise_level = 0.1;
};

/// Noiseless value:
///   sphere     sum theta_i^2
///   rosenbrock sum_{i<d} 100 (theta_{i+1} - theta_i^2)^2 + (theta_i - 1)^2
///   cigar      theta_1^2 + 1e6 sum_{i>1} theta_i^2
///   hm         sum theta_i^2 (1.1 + cos(1/theta_i)), term is 0 at theta_i = 0
double dfo_value(const DfoObjective& obj, std::span<const double> theta);

/// dfo_value + noise_level * z, z ~ N(0, 1).
double dfo_noisy_eval(const DfoObjective& obj, std::span<const double> theta, RngStream& stream);

class DfoProblem final : public Problem {
 public:
  explicit DfoProblem(DfoObjective obj) : obj_(obj) {}

  std::size_t dimension() const override { return obj_.d; }
  Capabilities capabilities() const override { return {obj_.noise_level > 0.0, true, false}; }
  double evaluate(std::span<const double> theta, const DataPoint& xi,
                  RngStream& stream) const override;
  double objective(std::span<const double> theta) const override;

  const DfoObjective& spec() const noexcept { return obj_; }

 private:
  DfoObjective obj_;
};

}  // namespace gsmooth
