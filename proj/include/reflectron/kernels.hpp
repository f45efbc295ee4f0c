#pragma once

#include <complex>
#include <cstddef>

// Hot loops with a scalar reference and an AVX2 variant chosen at runtime.
namespace reflectron::kernels {

enum class Isa { Scalar, Avx2 };

// Best instruction set supported by this CPU and build.
Isa detected_isa();
// Instruction set currently used by the dispatching entry points.
Isa active_isa();
// Overrides dispatch; requests for an unsupported Isa fall back to Scalar.
void force_isa(Isa isa);
const char* isa_name(Isa isa);

// sum_i conj(a_i) * b_i
std::complex<double> conj_dot(const std::complex<double>* a, const std::complex<double>* b,
                              std::size_t n);

// out_i = (1-p_i) a + sqrt((1-p_i)^2 a^2 + 4 p_i (1-p_i) b2): the trace norm on
// the worst-case family with a = 1-|c0|^2 and b2 = |c0~ conj(c0) - e^{i alpha}|^2.
void covariant_profile(double a, double b2, const double* p, double* out, std::size_t n);

// Reflection distance over u for fixed (n, r), given cos u and sin u.
void landscape_row(int n, double r, const double* cos_u, const double* sin_u, double* out,
                   std::size_t count);

namespace scalar {
std::complex<double> conj_dot(const std::complex<double>* a, const std::complex<double>* b,
                              std::size_t n);
void covariant_profile(double a, double b2, const double* p, double* out, std::size_t n);
void landscape_row(int n, double r, const double* cos_u, const double* sin_u, double* out,
                   std::size_t count);
}  // namespace scalar

namespace avx2 {
bool compiled();
std::complex<double> conj_dot(const std::complex<double>* a, const std::complex<double>* b,
                              std::size_t n);
void covariant_profile(double a, double b2, const double* p, double* out, std::size_t n);
void landscape_row(int n, double r, const double* cos_u, const double* sin_u, double* out,
                   std::size_t count);
}  // namespace avx2

}  // namespace reflectron::kernels
