#pragma once

// Vectorized inner loops shared by the samplers, estimators and problems.
//
// Every kernel has a scalar reference implementation and, where the build
// target allows, AVX2+FMA (x86-64) or NEON (aarch64) variants. The variant
// is chosen once at startup from the CPU's reported features; tests can pin
// a backend with set_backend() to check the variants against the reference.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace gsmooth::kernels {

enum class Backend { Scalar, Avx2, Neon };

std::string_view to_string(Backend backend);

struct KernelTable {
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i a[i] * a[i]
  double (*sum_squares)(const double* a, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out[i] = x[i] + alpha * e[i]
  void (*add_scaled)(const double* x, double alpha, const double* e, double* out, std::size_t n);
  // x[i] *= alpha
  void (*scale)(double alpha, double* x, std::size_t n);
};

/// Backends compiled into this binary and supported by the running CPU.
std::vector<Backend> available_backends();

const KernelTable& table(Backend backend);

Backend active_backend();
const KernelTable& active();

/// Overrides the runtime choice. Throws UnsupportedError if `backend` is not
/// available on this machine.
void set_backend(Backend backend);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline double sum_squares(std::span<const double> a) {
  return active().sum_squares(a.data(), a.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline void add_scaled(std::span<const double> x, double alpha, std::span<const double> e,
                       std::span<double> out) {
  active().add_scaled(x.data(), alpha, e.data(), out.data(), x.size());
}
inline void scale(double alpha, std::span<double> x) { active().scale(alpha, x.data(), x.size()); }

namespace detail {
extern const KernelTable scalar_table;
#if defined(GSMOOTH_HAVE_AVX2_TU)
extern const KernelTable avx2_table;
#endif
#if defined(GSMOOTH_HAVE_NEON_TU)
extern const KernelTable neon_table;
#endif
}  // namespace detail

}  // namespace gsmooth::kernels
