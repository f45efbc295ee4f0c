#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>

// Test-side random objects drawn without the library's samplers so that they
// can serve as independent inputs.
namespace testing {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

constexpr double kPi = std::numbers::pi;

inline Vector gaussian_state(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = cplx(g(rng), g(rng));
  return v / v.norm();
}

inline Matrix gaussian_matrix(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

inline Matrix random_unitary(int d, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(d, rng));
  return qr.householderQ() * Matrix::Identity(d, d);
}

inline Matrix random_density(int d, std::mt19937_64& rng) {
  const Matrix g = gaussian_matrix(d, rng);
  const Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

// Unitary fixing psi up to the phase e^{i gamma}: e^{i gamma} on psi, Haar on
// the orthogonal complement.
inline Matrix stabilizer_unitary(const Vector& psi, double gamma, std::mt19937_64& rng) {
  const int d = static_cast<int>(psi.size());
  Matrix frame(d, d);
  frame.col(0) = psi;
  frame.rightCols(d - 1) = gaussian_matrix(d, rng).leftCols(d - 1);
  Eigen::HouseholderQR<Matrix> qr(frame);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  Matrix inner = Matrix::Identity(d, d);
  inner(0, 0) = std::polar(1.0, gamma);
  inner.bottomRightCorner(d - 1, d - 1) = random_unitary(d - 1, rng);
  return q * inner * q.adjoint();
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testing
