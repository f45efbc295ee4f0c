#include <doctest.h>

#include "reflectron/distances.hpp"
#include "reflectron/errors.hpp"
#include "reflectron/universal.hpp"
#include "support.hpp"

using namespace reflectron;
using testing::kPi;
using testing::max_abs;

TEST_CASE("target eigen-decomposition reconstructs the unitary") {
  std::mt19937_64 rng(1);
  for (int d = 2; d <= 5; ++d)
    for (int s = 0; s < 5; ++s) {
      const Matrix u = testing::random_unitary(d, rng);
      const auto pairs = eigendecompose_target(u);
      REQUIRE(static_cast<int>(pairs.size()) == d);
      CHECK(pairs[0].alpha == 0.0);
      // Global phase from the reference eigenvalue.
      const cplx ref = pairs[0].psi.dot(u * pairs[0].psi);
      Matrix rebuilt = ref * Matrix::Identity(d, d);
      for (int j = 1; j < d; ++j) {
        CHECK(pairs[j].alpha > -kPi);
        CHECK(pairs[j].alpha <= kPi);
        rebuilt = rebuilt * rotation_unitary(pairs[j].psi, pairs[j].alpha);
      }
      CHECK(max_abs(rebuilt - u) < 1e-10);
    }
}

TEST_CASE("binary phase approximation") {
  CHECK(binary_angle(kPi / 2, 2) == 0.5);
  for (int k = 1; k <= 20; ++k) {
    const double a = binary_angle(kPi, k);
    CHECK(a == 1.0 - std::ldexp(1.0, -k));
    CHECK(kPi - kPi * a == doctest::Approx(kPi * std::ldexp(1.0, -k)));
  }
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int s = 0; s < 200; ++s) {
    const double theta = angle(rng);
    const int k = 1 + s % 30;
    CHECK(std::abs(theta - kPi * binary_angle(theta, k)) <= kPi * std::ldexp(1.0, -k) + 1e-15);
  }
}

TEST_CASE("program budget") {
  const auto p = budget(2, 0.1, {kPi});
  CHECK(p.k == 8);
  REQUIRE(p.rotations.size() == 1);
  CHECK(p.rotations[0].n == 283);
  CHECK(p.total_qubits == p.phase_qubits + p.copy_qubits + p.symmetric_qubits);
  for (int d = 2; d <= 4; ++d)
    for (double eps : {0.5, 0.1, 0.01, 1e-4}) {
      std::mt19937_64 rng(static_cast<std::uint64_t>(d * 1000 + 1 / eps));
      std::uniform_real_distribution<double> angle(-kPi, kPi);
      std::vector<double> alphas(d - 1);
      for (auto& a : alphas) a = angle(rng);
      const auto prog = budget(d, eps, alphas);
      for (std::size_t j = 0; j < alphas.size(); ++j) {
        const auto& r = prog.rotations[j];
        CHECK(linear_bound(r.n, std::abs(alphas[j])) <= eps / (3.0 * (d - 1)) + 1e-12);
        CHECK(r.symmetric_qubits == sym_dim_qubits(r.n, d));
      }
      // Reflections only: log2 of the symmetric dimension is about (d-1) log2 n.
      const auto refl = budget(d, eps, std::vector<double>(d - 1, kPi));
      const double n = refl.rotations[0].n;
      CHECK(refl.rotations[0].symmetric_qubits <= (d - 1) * std::log2((n + d - 1) / (d - 1.0)) + d + 1);
    }
  CHECK_THROWS_AS(budget(2, 1e-9, {kPi}), BudgetError);
  CHECK_THROWS_AS(budget(3, 0.1, {kPi}), DomainError);
}

TEST_CASE("program qubits scale with the squared dimension times the precision bits") {
  for (int d = 2; d <= 4; ++d) {
    const auto fit = fit_program_scaling(d, {8, 10, 12, 14, 16, 18, 20});
    CHECK(fit.slope >= 0.8);
    CHECK(fit.slope <= 1.5);
    CHECK(fit.slope_with_registers > fit.slope);
  }
}

TEST_CASE("a reflection target reduces to a single rotation") {
  std::mt19937_64 rng(3);
  const Vector psi = testing::gaussian_state(2, rng);
  const Matrix u = rotation_unitary(psi, kPi);
  const double eps = 0.2;
  const auto proc = assemble_universal_channel(u, eps);
  REQUIRE(proc.stages().size() == 1);
  const auto& r = proc.program().rotations[0];
  const auto e = r_theta_coeffs(r.n, r.theta);
  const Matrix x = testing::gaussian_matrix(2, rng);
  // The stage rotates about one eigenvector; up to a global phase it is the target.
  CHECK(max_abs(rotation_unitary(r.psi, r.alpha) * x * rotation_unitary(r.psi, r.alpha).adjoint() -
                u * x * u.adjoint()) < 1e-10);
  CHECK(max_abs(proc.apply(x) - effective_channel(e, r.psi).apply(x)) < 1e-12);
  const double want = closed_form_rotation_distance(e, std::abs(r.alpha));
  const auto rep = verify_budget(u, eps, 400, 5);
  CHECK(rep.measured <= want + 1e-9);
  CHECK(rep.measured >= 0.95 * want);
  CHECK(rep.pass);
}

TEST_CASE("assembled processors meet the precision on random targets") {
  for (int t = 0; t < 4; ++t) {
    const Matrix u = haar_random_unitary(2, 100 + t).entries();
    const auto rep = verify_budget(u, 0.2, 64, t);
    CHECK(rep.pass);
    CHECK(rep.measured <= rep.phase_term + rep.rotation_term + 1e-9);
    CHECK(rep.rotation_term <= rep.rotation_bound + 1e-12);
    CHECK(rep.phase_term + rep.rotation_bound <= 0.2);
  }
  const Matrix u3 = haar_random_unitary(3, 7).entries();
  const auto rep3 = verify_budget(u3, 0.5, 32, 1);
  CHECK(rep3.pass);
}

TEST_CASE("composed rotations are not covariant about a single axis") {
  std::mt19937_64 rng(4);
  const Matrix u = testing::random_unitary(3, rng);
  const auto proc = assemble_universal_channel(u, 0.5);
  REQUIRE(proc.stages().size() == 2);
  const Vector axis = proc.stages()[0].psi();
  const Matrix w = testing::stabilizer_unitary(axis, 0.7, rng);
  const Matrix x = testing::random_density(3, rng);
  const Matrix lhs = w * proc.apply(x) * w.adjoint();
  const Matrix rhs = proc.apply(w * x * w.adjoint());
  CHECK(max_abs(lhs - rhs) > 1e-4);
  // Each stage alone is covariant about its own axis.
  const auto& s0 = proc.stages()[0];
  CHECK(max_abs(w * s0.apply(x) * w.adjoint() - s0.apply(w * x * w.adjoint())) < 1e-10);
}

TEST_CASE("lower bounds obtained from universal programming") {
  for (int d = 2; d <= 6; ++d) {
    const double eps = 1e-3;
    CHECK(lower_bound_via_universal(d, eps) == doctest::Approx((d + 1.0) / 2.0 * std::log2(std::pow(d, -5.0) / eps)));
    CHECK(lower_bound_via_universal(d, eps, 4.0) - lower_bound_via_universal(d, eps) == doctest::Approx((d + 1.0)));
    // Far into the small-epsilon regime the ratio tends to 2 (d-1)/(d+1).
    const double tiny = 1e-300;
    const double ratio = reflection_lower_bound_bits(d, tiny) / lower_bound_via_universal(d, tiny);
    CHECK(ratio == doctest::Approx(2.0 * (d - 1.0) / (d + 1.0)).epsilon(0.05));
  }
  CHECK(reflection_lower_bound_bits(3, 1e-6) == doctest::Approx(2.0 * std::log2(1.0 / (8.0 * 64.0 * 1e-6))));
}
