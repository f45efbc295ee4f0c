#include "reflectron/kernels.hpp"

#ifdef __AVX2__
#include <immintrin.h>
#endif

namespace reflectron::kernels::avx2 {

#ifdef __AVX2__

bool compiled() { return true; }

namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

std::complex<double> conj_dot(const std::complex<double>* a, const std::complex<double>* b,
                              std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d re_acc = _mm256_setzero_pd();
  __m256d im_acc = _mm256_setzero_pd();
  std::size_t i = 0;
  // Two complex numbers per register: [re0 im0 re1 im1].
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    re_acc = _mm256_fmadd_pd(va, vb, re_acc);
    const __m256d vb_swap = _mm256_permute_pd(vb, 0b0101);
    im_acc = _mm256_fmadd_pd(va, vb_swap, im_acc);
  }
  double re = hsum(re_acc);
  alignas(32) double t[4];
  _mm256_store_pd(t, im_acc);
  double im = (t[0] + t[2]) - (t[1] + t[3]);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void covariant_profile(double a, double b2, const double* p, double* out, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb4 = _mm256_set1_pd(4.0 * b2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vp = _mm256_loadu_pd(p + i);
    const __m256d q = _mm256_sub_pd(one, vp);
    const __m256d t = _mm256_mul_pd(q, va);
    const __m256d pq4b = _mm256_mul_pd(_mm256_mul_pd(vp, q), vb4);
    const __m256d root = _mm256_sqrt_pd(_mm256_fmadd_pd(t, t, pq4b));
    _mm256_storeu_pd(out + i, _mm256_add_pd(t, root));
  }
  if (i < n) scalar::covariant_profile(a, b2, p + i, out + i, n - i);
}

void landscape_row(int n, double r, const double* cos_u, const double* sin_u, double* out,
                   std::size_t count) {
  const double nr_s = n * r;
  const double n1_s = n + 1.0;
  const __m256d nr = _mm256_set1_pd(nr_s);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d inv_n1 = _mm256_set1_pd(1.0 / n1_s);
  const __m256d inv_n1_sq = _mm256_set1_pd(1.0 / (n1_s * n1_s));
  const __m256d base = _mm256_set1_pd(1.0 + nr_s * nr_s);
  const __m256d n2 = _mm256_set1_pd(n + 2.0);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d c = _mm256_loadu_pd(cos_u + i);
    const __m256d s = _mm256_loadu_pd(sin_u + i);
    const __m256d c0_sq = _mm256_mul_pd(_mm256_fmadd_pd(_mm256_mul_pd(two, nr), c, base), inv_n1_sq);
    const __m256d a = _mm256_sub_pd(one, c0_sq);
    const __m256d re = _mm256_fmadd_pd(nr, c, n2);
    const __m256d im = _mm256_mul_pd(nr, s);
    const __m256d x = _mm256_mul_pd(_mm256_sqrt_pd(_mm256_fmadd_pd(re, re, _mm256_mul_pd(im, im))), inv_n1);
    const __m256d dom_a = _mm256_mul_pd(two, a);
    const __m256d dom_b =
        _mm256_div_pd(_mm256_mul_pd(two, _mm256_mul_pd(x, x)), _mm256_fmsub_pd(two, x, a));
    const __m256d in_a = _mm256_cmp_pd(a, x, _CMP_GE_OQ);
    _mm256_storeu_pd(out + i, _mm256_blendv_pd(dom_b, dom_a, in_a));
  }
  if (i < count) scalar::landscape_row(n, r, cos_u + i, sin_u + i, out + i, count - i);
}

#else

bool compiled() { return false; }

std::complex<double> conj_dot(const std::complex<double>* a, const std::complex<double>* b,
                              std::size_t n) {
  return scalar::conj_dot(a, b, n);
}

void covariant_profile(double a, double b2, const double* p, double* out, std::size_t n) {
  scalar::covariant_profile(a, b2, p, out, n);
}

void landscape_row(int n, double r, const double* cos_u, const double* sin_u, double* out,
                   std::size_t count) {
  scalar::landscape_row(n, r, cos_u, sin_u, out, count);
}

#endif

}  // namespace reflectron::kernels::avx2
