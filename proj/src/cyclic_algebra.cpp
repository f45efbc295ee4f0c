#include "reflectron/cyclic_algebra.hpp"

#include <cmath>
#include <numbers>

#include "reflectron/errors.hpp"

namespace reflectron {

CyclicElement::CyclicElement(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 1) throw DomainError("cyclic element needs at least one coefficient");
}

namespace {

// exp(2 pi i m / N) with m reduced mod N for accuracy.
cplx root_of_unity(long long m, long long N) {
  m %= N;
  if (m < 0) m += N;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(N));
}

}  // namespace

std::vector<cplx> fourier(const CyclicElement& e) {
  const long long N = e.copies() + 1;
  std::vector<cplx> out(N, 0.0);
  for (long long k = 0; k < N; ++k)
    for (long long l = 0; l < N; ++l) out[k] += root_of_unity(l * k, N) * e[static_cast<int>(l)];
  return out;
}

CyclicElement inverse_fourier(std::span<const cplx> ct) {
  const long long N = static_cast<long long>(ct.size());
  std::vector<cplx> c(N, 0.0);
  for (long long l = 0; l < N; ++l) {
    for (long long k = 0; k < N; ++k) c[l] += root_of_unity(-l * k, N) * ct[k];
    c[l] /= static_cast<double>(N);
  }
  return CyclicElement(std::move(c));
}

bool is_unitary_element(const CyclicElement& e, double tol) {
  for (cplx v : fourier(e))
    if (std::abs(std::abs(v) - 1.0) > tol) return false;
  return true;
}

bool is_program_isometric(const CyclicElement& e, double tol) {
  cplx ct0 = 0.0;
  double norm_sq = 0.0;
  for (cplx c : e.coeffs()) {
    ct0 += c;
    norm_sq += std::norm(c);
  }
  return std::abs(std::abs(ct0) - 1.0) <= tol && std::abs(norm_sq - 1.0) <= tol;
}

CyclicElement identity_element(int n) {
  if (n < 0) throw DomainError("copy count must be nonnegative");
  std::vector<cplx> c(n + 1, 0.0);
  c[0] = 1.0;
  return CyclicElement(std::move(c));
}

CyclicElement r_theta_coeffs(int n, double theta) {
  if (n < 1) throw DomainError("r_theta_coeffs needs n >= 1");
  const cplx phase = std::polar(1.0, theta);
  std::vector<cplx> c(n + 1, (phase - 1.0) / static_cast<double>(n + 1));
  c[0] = (static_cast<double>(n) + phase) / static_cast<double>(n + 1);
  return CyclicElement(std::move(c));
}

double optimal_angle_cosine(int n) {
  if (n < 1) throw DomainError("optimal angle needs n >= 1");
  const double x = n;
  return -(x * x * x + 6.0 * x * x + 6.0 * x) / std::pow(x + 2.0, 3);
}

CyclicElement optimal_reflection_coeffs(int n, int sign) {
  if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
  return r_theta_coeffs(n, sign * std::acos(optimal_angle_cosine(n)));
}

CyclicElement lmr_coeffs(std::span<const double> thetas) {
  const int n = static_cast<int>(thetas.size());
  if (n < 1) throw DomainError("lmr_coeffs needs at least one angle");
  std::vector<cplx> c(n + 1);
  // suffix[l] = prod_{k > l} e^{i theta_k}, with 1-based angle indices.
  std::vector<cplx> suffix(n + 1, 1.0);
  for (int l = n - 1; l >= 0; --l) suffix[l] = suffix[l + 1] * std::polar(1.0, thetas[l]);
  double cos_prefix = 1.0;
  for (int l = 1; l <= n; ++l) {
    c[l] = suffix[l] * cplx(0.0, std::sin(thetas[l - 1])) * cos_prefix;
    cos_prefix *= std::cos(thetas[l - 1]);
  }
  c[0] = cos_prefix;
  return CyclicElement(std::move(c));
}

Vector apply_element(const CyclicElement& e, int d, const Vector& x) {
  const int k = e.copies() + 1;
  const std::size_t dim = tensor_dim(d, k);
  if (static_cast<std::size_t>(x.size()) != dim) throw DomainError("vector length mismatch");
  Vector out = e[0] * x;
  Vector cur = x;
  Vector next(x.size());
  Permutation shift(k);
  for (int t = 0; t < k; ++t) shift[t] = (t + 1) % k;
  for (int l = 1; l < k; ++l) {
    apply_permutation(shift, d, std::span<const cplx>(cur.data(), cur.size()),
                      std::span<cplx>(next.data(), next.size()));
    std::swap(cur, next);
    if (e[l] != 0.0) out += e[l] * cur;
  }
  return out;
}

DenseOperator dense_element(const CyclicElement& e, int d) {
  const int k = e.copies() + 1;
  const Matrix c = cyclic_permutation(k, d).entries();
  const auto dim = c.rows();
  Matrix out = e[0] * Matrix::Identity(dim, dim);
  Matrix power = Matrix::Identity(dim, dim);
  for (int l = 1; l < k; ++l) {
    power = c * power;
    out += e[l] * power;
  }
  return DenseOperator(std::move(out), d, k);
}

nlohmann::json complex_to_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

cplx complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json to_json(const CyclicElement& e) {
  nlohmann::json arr = nlohmann::json::array();
  for (cplx c : e.coeffs()) arr.push_back(complex_to_json(c));
  return nlohmann::json{{"n", e.copies()}, {"coeffs", arr}};
}

CyclicElement cyclic_element_from_json(const nlohmann::json& j) {
  std::vector<cplx> c;
  for (const auto& v : j.at("coeffs")) c.push_back(complex_from_json(v));
  CyclicElement e(std::move(c));
  if (j.contains("n") && j.at("n").get<int>() != e.copies())
    throw DomainError("coefficient count does not match n");
  return e;
}

}  // namespace reflectron
