#include <atomic>

#include "gsmooth/errors.hpp"
#include "gsmooth/kernels.hpp"

namespace gsmooth::kernels {
namespace {

bool cpu_supports(Backend backend) {
  switch (backend) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(GSMOOTH_HAVE_AVX2_TU)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(GSMOOTH_HAVE_NEON_TU)
      return true;  // mandatory on aarch64
#else
      return false;
#endif
  }
  return false;
}

Backend detect() {
  if (cpu_supports(Backend::Avx2)) return Backend::Avx2;
  if (cpu_supports(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{&table(detect())};
  return slot;
}

std::atomic<Backend>& active_name() {
  static std::atomic<Backend> name{detect()};
  return name;
}

}  // namespace

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
    case Backend::Neon:
      return "neon";
  }
  return "unknown";
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon}) {
    if (cpu_supports(b)) out.push_back(b);
  }
  return out;
}

const KernelTable& table(Backend backend) {
  switch (backend) {
    case Backend::Avx2:
#if defined(GSMOOTH_HAVE_AVX2_TU)
      return detail::avx2_table;
#else
      break;
#endif
    case Backend::Neon:
#if defined(GSMOOTH_HAVE_NEON_TU)
      return detail::neon_table;
#else
      break;
#endif
    case Backend::Scalar:
      return detail::scalar_table;
  }
  return detail::scalar_table;
}

Backend active_backend() { return active_name().load(std::memory_order_relaxed); }

const KernelTable& active() { return *active_slot().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
  if (!cpu_supports(backend)) {
    throw UnsupportedError("kernel backend '" + std::string(to_string(backend)) +
                           "' is not available on this machine");
  }
  active_slot().store(&table(backend), std::memory_order_relaxed);
  active_name().store(backend, std::memory_order_relaxed);
}

}  // namespace gsmooth::kernels
