#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsmooth {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A distribution or estimator parameter is outside its valid range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A closed form was requested outside the range where it is derived.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The convergence bound does not apply (bias ratio B >= 0.5).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

// Operation not defined for this sampler or problem.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// An objective returned a non-finite value.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, std::vector<double> point)
      : Error(what), point_(std::move(point)) {}
  const std::vector<double>& point() const noexcept { return point_; }

 private:
  std::vector<double> point_;
};

// A row lies numerically in the span of its predecessors. Callers resample.
class RankDeficiencyError : public Error {
 public:
  RankDeficiencyError(const std::string& what, std::size_t row)
      : Error(what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

// SGD produced a non-finite parameter vector.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t round, std::size_t iteration)
      : Error(what), round_(round), iteration_(iteration) {}
  std::size_t round() const noexcept { return round_; }
  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t round_;
  std::size_t iteration_;
};

}  // namespace gsmooth
