#include <doctest.h>

#include "reflectron/cyclic_algebra.hpp"
#include "reflectron/errors.hpp"
#include "support.hpp"

using namespace reflectron;
using testing::kPi;
using testing::max_abs;

namespace {

std::vector<cplx> random_coeffs(int n, std::mt19937_64& rng) {
  const Vector v = testing::gaussian_state(n + 1, rng);
  return {v.data(), v.data() + v.size()};
}

// Random unitary element: unit-modulus Fourier coefficients.
CyclicElement random_unitary_element(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  std::vector<cplx> ct(n + 1);
  for (auto& z : ct) z = std::polar(1.0, phase(rng));
  return inverse_fourier(ct);
}

}  // namespace

TEST_CASE("Fourier transform of the cyclic coefficients") {
  const auto ct = fourier(CyclicElement({0.0, 1.0}));
  CHECK(std::abs(ct[0] - 1.0) < 1e-15);
  CHECK(std::abs(ct[1] + 1.0) < 1e-15);

  std::mt19937_64 rng(1);
  for (int n : {1, 2, 5, 17, 64}) {
    const CyclicElement e(random_coeffs(n, rng));
    const auto f = fourier(e);
    const auto back = inverse_fourier(f);
    for (int l = 0; l <= n; ++l) CHECK(std::abs(back[l] - e[l]) < 1e-12);
    cplx sum = 0.0;
    for (int l = 0; l <= n; ++l) sum += e[l];
    CHECK(std::abs(f[0] - sum) < 1e-12);
    // Direct DFT oracle for one coefficient.
    cplx direct = 0.0;
    for (int l = 0; l <= n; ++l) direct += std::polar(1.0, 2.0 * kPi * l * 1 / (n + 1)) * e[l];
    CHECK(std::abs(f[1] - direct) < 1e-12);
  }
}

TEST_CASE("unitary elements") {
  CHECK_FALSE(is_unitary_element(CyclicElement({0.5, 0.5})));
  CHECK(is_unitary_element(identity_element(3)));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int n = 1; n <= 8; ++n) {
    CHECK(is_unitary_element(r_theta_coeffs(n, angle(rng))));
    CHECK(is_unitary_element(optimal_reflection_coeffs(n)));
  }
  for (int n = 1; n <= 4; ++n)
    for (int d = 2; d <= 3; ++d) {
      const auto e = random_unitary_element(n, rng);
      const Matrix v = dense_element(e, d).entries();
      CHECK(max_abs(v.adjoint() * v - Matrix::Identity(v.rows(), v.cols())) < 1e-10);
      const Vector phi = testing::gaussian_state(d, rng);
      const Vector psi = testing::gaussian_state(d, rng);
      const Vector x = kron(phi, tensor_power(psi, n));
      CHECK(apply_element(e, d, x).norm() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(max_abs(apply_element(e, d, x) - v * x) < 1e-12);
    }
}

TEST_CASE("rotation coefficients") {
  const auto e = r_theta_coeffs(3, kPi);
  CHECK(std::abs(e[0] - 0.5) < 1e-15);
  for (int l = 1; l <= 3; ++l) CHECK(std::abs(e[l] + 0.5) < 1e-15);
  const double theta = 0.83;
  const auto f = fourier(r_theta_coeffs(5, theta));
  CHECK(std::abs(f[0] - std::polar(1.0, theta)) < 1e-14);
  for (int k = 1; k <= 5; ++k) CHECK(std::abs(f[k] - 1.0) < 1e-14);

  // n = 1, theta = pi: V = I - (I + SWAP) has eigenvalue -1 on |psi psi>.
  std::mt19937_64 rng(3);
  const Vector psi = testing::gaussian_state(2, rng);
  const Vector pp = kron(psi, psi);
  const Matrix v = dense_element(r_theta_coeffs(1, kPi), 2).entries();
  CHECK(max_abs(v * pp + pp) < 1e-14);
}

TEST_CASE("optimal angle cosine") {
  CHECK(optimal_angle_cosine(2) == doctest::Approx(-0.6875));
  CHECK(optimal_angle_cosine(1) == doctest::Approx(-13.0 / 27.0));
  CHECK_THROWS_AS(optimal_angle_cosine(0), DomainError);
}

TEST_CASE("sequential swap coefficients") {
  const auto swap = lmr_coeffs(std::vector<double>{kPi / 2});
  CHECK(std::abs(swap[0]) < 1e-15);
  CHECK(std::abs(swap[1] - cplx(0.0, 1.0)) < 1e-15);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> angle(0.0, kPi / 2);
  for (int n = 1; n <= 10; ++n) {
    std::vector<double> th(n);
    double total = 0.0;
    for (auto& t : th) total += (t = angle(rng));
    const auto e = lmr_coeffs(th);
    CHECK(std::abs(fourier(e)[0] - std::polar(1.0, total)) < 1e-12);
    CHECK(is_program_isometric(e));
    const double theta = angle(rng);
    const auto eq = lmr_coeffs(std::vector<double>(n, theta));
    for (int l = 1; l < n; ++l)
      CHECK(std::abs(eq[l + 1] / eq[l] - std::polar(1.0, -theta) * std::cos(theta)) < 1e-12);
  }
  // Equal angles below pi/2 never give a unitary element.
  CHECK_FALSE(is_unitary_element(lmr_coeffs(std::vector<double>(4, 0.3))));
}

TEST_CASE("cyclic element JSON roundtrip") {
  const auto e = optimal_reflection_coeffs(4, -1);
  const auto back = cyclic_element_from_json(to_json(e));
  for (int l = 0; l <= 4; ++l) CHECK(back[l] == e[l]);
  CHECK_THROWS_AS(CyclicElement(std::vector<cplx>{}), DomainError);
}
