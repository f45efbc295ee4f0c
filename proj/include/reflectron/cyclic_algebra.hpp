#pragma once

#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "reflectron/tensor_core.hpp"

namespace reflectron {

// Element sum_l c_l C^l of the cyclic subalgebra of C[S_{n+1}].
class CyclicElement {
 public:
  explicit CyclicElement(std::vector<cplx> coeffs);
  int copies() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  cplx operator[](int l) const { return coeffs_[l]; }

 private:
  std::vector<cplx> coeffs_;
};

// c~_k = sum_l exp(2 pi i l k / (n+1)) c_l (unnormalized).
std::vector<cplx> fourier(const CyclicElement& e);
CyclicElement inverse_fourier(std::span<const cplx> ct);

bool is_unitary_element(const CyclicElement& e, double tol = 1e-10);

// Whether V acts isometrically on C^d (x) psi^{(x)n}: |c~_0| = 1 and
// sum_l |c_l|^2 = 1. Unitary elements qualify, and so do the coefficient
// vectors of sequential SWAP interactions, which need not be unitary.
bool is_program_isometric(const CyclicElement& e, double tol = 1e-10);

CyclicElement identity_element(int n);
CyclicElement r_theta_coeffs(int n, double theta);

// f(n) = -(n^3 + 6n^2 + 6n) / (n+2)^3
double optimal_angle_cosine(int n);
CyclicElement optimal_reflection_coeffs(int n, int sign = 1);

CyclicElement lmr_coeffs(std::span<const double> thetas);

DenseOperator dense_element(const CyclicElement& e, int d);

// V (x) for x in (C^d)^{(n+1)}, without forming the dense operator.
Vector apply_element(const CyclicElement& e, int d, const Vector& x);

nlohmann::json to_json(const CyclicElement& e);
CyclicElement cyclic_element_from_json(const nlohmann::json& j);
nlohmann::json complex_to_json(cplx z);
cplx complex_from_json(const nlohmann::json& j);

}  // namespace reflectron
