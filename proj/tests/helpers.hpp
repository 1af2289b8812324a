#pragma once

// Small problems with known gradients, used as test oracles.

#include <atomic>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "gsmooth/problems.hpp"
#include "gsmooth/rng.hpp"

namespace gsmooth::testing {

// F(theta) = a^T theta, plus optional N(0, noise^2) per call.
class LinearProblem final : public Problem {
 public:
  explicit LinearProblem(std::vector<double> a, double noise = 0.0) : a_(std::move(a)), noise_(noise) {}
  std::size_t dimension() const override { return a_.size(); }
  Capabilities capabilities() const override { return {noise_ > 0.0, true, true}; }
  double evaluate(std::span<const double> theta, const DataPoint&, RngStream& s) const override {
    ++calls;
    double v = objective(theta);
    if (noise_ > 0.0) v += noise_ * s.normal();
    return v;
  }
  double objective(std::span<const double> theta) const override {
    double v = 0.0;
    for (std::size_t j = 0; j < a_.size(); ++j) v += a_[j] * theta[j];
    return v;
  }
  std::vector<double> gradient(std::span<const double>) const override { return a_; }

  mutable std::atomic<std::size_t> calls{0};

 private:
  std::vector<double> a_;
  double noise_;
};

// F(theta) = scale * |theta|^2.
class QuadraticProblem final : public Problem {
 public:
  explicit QuadraticProblem(std::size_t d, double scale = 1.0) : d_(d), scale_(scale) {}
  std::size_t dimension() const override { return d_; }
  Capabilities capabilities() const override { return {false, true, true}; }
  double evaluate(std::span<const double> theta, const DataPoint&, RngStream&) const override {
    ++calls;
    return objective(theta);
  }
  double objective(std::span<const double> theta) const override {
    double v = 0.0;
    for (double t : theta) v += t * t;
    return scale_ * v;
  }
  std::vector<double> gradient(std::span<const double> theta) const override {
    std::vector<double> g(theta.begin(), theta.end());
    for (auto& x : g) x *= 2.0 * scale_;
    return g;
  }

  mutable std::atomic<std::size_t> calls{0};

 private:
  std::size_t d_;
  double scale_;
};

class ConstantProblem final : public Problem {
 public:
  ConstantProblem(std::size_t d, double value) : d_(d), value_(value) {}
  std::size_t dimension() const override { return d_; }
  Capabilities capabilities() const override { return {false, true, true}; }
  double evaluate(std::span<const double>, const DataPoint&, RngStream&) const override { return value_; }
  double objective(std::span<const double>) const override { return value_; }
  std::vector<double> gradient(std::span<const double>) const override { return std::vector<double>(d_, 0.0); }

 private:
  std::size_t d_;
  double value_;
};

// Returns NaN once theta leaves the unit ball.
class BoundedProblem final : public Problem {
 public:
  explicit BoundedProblem(std::size_t d) : d_(d) {}
  std::size_t dimension() const override { return d_; }
  Capabilities capabilities() const override { return {false, true, false}; }
  double evaluate(std::span<const double> theta, const DataPoint&, RngStream&) const override {
    double r = 0.0;
    for (double t : theta) r += t * t;
    return r > 1.0 ? std::nan("") : r;
  }

 private:
  std::size_t d_;
};

struct Moments4 {
  double mean = 0.0;
  double variance = 0.0;  // population
  double kurtosis = 0.0;  // fourth standardized moment
};

inline Moments4 moments(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  double m = 0.0;
  for (double x : xs) m += x;
  m /= n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : xs) {
    const double c = (x - m) * (x - m);
    m2 += c;
    m4 += c * c;
  }
  m2 /= n;
  m4 /= n;
  return {m, m2, m4 / (m2 * m2)};
}

// Moments about zero, for laws whose mean is known to be zero.
inline Moments4 raw_moments(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  double m1 = 0.0;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : xs) {
    m1 += x;
    m2 += x * x;
    m4 += x * x * x * x;
  }
  m1 /= n;
  m2 /= n;
  m4 /= n;
  return {m1, m2, m4 / (m2 * m2)};
}

}  // namespace gsmooth::testing
