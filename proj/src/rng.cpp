#include "gsmooth/rng.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "gsmooth/errors.hpp"

namespace gsmooth {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// Order-sensitive: child(child(k, a), b) != child(child(k, b), a).
std::uint64_t child_key(std::uint64_t parent, std::uint64_t label) {
  return mix64(mix64(parent) ^ mix64(label + kGolden) ^ 0x5851f42d4c957f2dULL);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : RngStream(seed, {}, mix64(seed + kGolden)) {}

RngStream::RngStream(std::uint64_t seed, std::vector<std::uint64_t> path, std::uint64_t key)
    : seed_(seed), path_(std::move(path)), key_(key) {
  reseed(key_);
}

void RngStream::reseed(std::uint64_t key) {
  std::uint64_t s = key;
  for (auto& word : state_) {
    s += kGolden;
    word = mix64(s);
  }
}

RngStream RngStream::derive(std::uint64_t label) const {
  std::vector<std::uint64_t> path = path_;
  path.push_back(label);
  return RngStream(seed_, std::move(path), child_key(key_, label));
}

RngStream::result_type RngStream::operator()() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double RngStream::normal() { return normal_(*this); }

RngStream derive(const RngStream& parent, std::initializer_list<std::uint64_t> labels) {
  RngStream out = parent;
  for (auto label : labels) out = out.derive(label);
  return out;
}

std::vector<double> standard_normal(RngStream& stream, std::size_t n) {
  std::vector<double> out(n);
  for (auto& v : out) v = stream.normal();
  return out;
}

std::vector<double> bernoulli_standardized(RngStream& stream, std::size_t n, double p, double m) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("bernoulli probability must lie in (0, 1)");
  if (!(m > 0.0) || !std::isfinite(m)) throw ParameterError("bernoulli scale must be positive");
  const double hi = (1.0 - p) / m;
  const double lo = -p / m;
  std::vector<double> out(n);
  for (auto& v : out) v = stream.uniform() < p ? hi : lo;
  return out;
}

Matrix haar_rotation(RngStream& stream, std::size_t d) {
  Eigen::MatrixXd g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = stream.normal();

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  if (q.determinant() < 0.0) q.col(0) *= -1.0;

  Matrix out(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(i, j) = q(i, j);
  return out;
}

}  // namespace gsmooth
