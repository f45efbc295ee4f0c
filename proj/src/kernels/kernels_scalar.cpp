#include <cmath>

#include "reflectron/kernels.hpp"

namespace reflectron::kernels::scalar {

std::complex<double> conj_dot(const std::complex<double>* a, const std::complex<double>* b,
                              std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

void covariant_profile(double a, double b2, const double* p, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double q = 1.0 - p[i];
    const double t = q * a;
    out[i] = t + std::sqrt(t * t + 4.0 * p[i] * q * b2);
  }
}

void landscape_row(int n, double r, const double* cos_u, const double* sin_u, double* out,
                   std::size_t count) {
  const double nr = n * r;
  const double n1 = n + 1.0;
  const double inv_n1_sq = 1.0 / (n1 * n1);
  for (std::size_t i = 0; i < count; ++i) {
    const double c = cos_u[i], s = sin_u[i];
    // |c0|^2 with c0 = (e^{iu} + n r) / (n+1)
    const double c0_sq = (1.0 + 2.0 * nr * c + nr * nr) * inv_n1_sq;
    const double a = 1.0 - c0_sq;
    const double re = n + 2.0 + nr * c;
    const double im = nr * s;
    const double x = std::sqrt(re * re + im * im) / n1;
    out[i] = (a >= x) ? 2.0 * a : 2.0 * x * x / (2.0 * x - a);
  }
}

}  // namespace reflectron::kernels::scalar
