#include <atomic>

#include "reflectron/kernels.hpp"

namespace reflectron::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

}  // namespace

Isa detected_isa() {
  static const Isa isa = (avx2::compiled() && cpu_has_avx2()) ? Isa::Avx2 : Isa::Scalar;
  return isa;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2) isa = Isa::Scalar;
  current().store(isa, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

std::complex<double> conj_dot(const std::complex<double>* a, const std::complex<double>* b,
                              std::size_t n) {
  return active_isa() == Isa::Avx2 ? avx2::conj_dot(a, b, n) : scalar::conj_dot(a, b, n);
}

void covariant_profile(double a, double b2, const double* p, double* out, std::size_t n) {
  if (active_isa() == Isa::Avx2)
    avx2::covariant_profile(a, b2, p, out, n);
  else
    scalar::covariant_profile(a, b2, p, out, n);
}

void landscape_row(int n, double r, const double* cos_u, const double* sin_u, double* out,
                   std::size_t count) {
  if (active_isa() == Isa::Avx2)
    avx2::landscape_row(n, r, cos_u, sin_u, out, count);
  else
    scalar::landscape_row(n, r, cos_u, sin_u, out, count);
}

}  // namespace reflectron::kernels
