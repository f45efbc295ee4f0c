#include <numeric>
#include <sstream>

#include <doctest.h>

#include "reflectron/circuits.hpp"
#include "reflectron/cyclic_algebra.hpp"
#include "reflectron/errors.hpp"
#include "support.hpp"

using namespace reflectron;
using testing::kPi;
using testing::max_abs;

namespace {

// I + ((e^{i theta} - 1)/(n+1)) sum_l C^l from explicit permutation powers.
Matrix rotation_algebra(int n, double theta) {
  const int k = n + 1;
  const auto dim = static_cast<Eigen::Index>(1) << k;
  const Matrix c = cyclic_permutation(k, 2).entries();
  Matrix sum = Matrix::Zero(dim, dim), power = Matrix::Identity(dim, dim);
  for (int l = 0; l < k; ++l) {
    sum += power;
    power = c * power;
  }
  return Matrix::Identity(dim, dim) + (std::polar(1.0, theta) - 1.0) / static_cast<double>(k) * sum;
}

}  // namespace

TEST_CASE("swap decomposition realizes the permutation") {
  std::mt19937_64 rng(1);
  for (int k = 1; k <= 8; ++k)
    for (int s = 0; s < 5; ++s) {
      Permutation perm(k);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const auto swaps = swap_decomposition(perm);
      // Slot contents after applying the swaps in order.
      std::vector<int> where(k);
      std::iota(where.begin(), where.end(), 0);
      std::vector<int> content(k);
      std::iota(content.begin(), content.end(), 0);
      for (const auto& [a, b] : swaps) std::swap(content[a], content[b]);
      for (int slot = 0; slot < k; ++slot) CHECK(perm[content[slot]] == slot);
      int cycles = 0;
      std::vector<bool> seen(k, false);
      for (int t = 0; t < k; ++t)
        if (!seen[t]) {
          ++cycles;
          for (int x = t; !seen[x]; x = perm[x]) seen[x] = true;
        }
      CHECK(static_cast<int>(swaps.size()) == k - cycles);
    }
}

TEST_CASE("projected circuit implements the rotation element") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int n : {1, 3, 7}) {
    for (int s = 0; s < 2; ++s) {
      const double theta = angle(rng);
      const auto g = build_rotation_circuit(n, theta);
      const Matrix block = projected_circuit(g);
      CHECK(max_abs(block - dense_element(r_theta_coeffs(n, theta), 2).entries()) < 1e-10);
      if (n <= 3) CHECK(max_abs(block - rotation_algebra(n, theta)) < 1e-10);
    }
  }
  const Matrix refl = projected_circuit(build_rotation_circuit(1, kPi));
  CHECK(max_abs(refl - rotation_algebra(1, kPi)) < 1e-12);
}

TEST_CASE("ancilla returns to its initial state on program inputs") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int n : {1, 3, 7}) {
    const auto g = build_rotation_circuit(n, angle(rng));
    const int L = g.ancilla;
    const Vector phi = testing::gaussian_state(2, rng);
    const Vector psi = testing::gaussian_state(2, rng);
    Vector anc = Vector::Zero(static_cast<Eigen::Index>(1) << L);
    anc(0) = 1.0;
    Vector state = kron(anc, kron(phi, tensor_power(psi, n)));
    apply_circuit(g, state);
    const auto sub = static_cast<Eigen::Index>(1) << (n + 1);
    CHECK(state.head(sub).norm() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("controlled-SWAP counts") {
  CHECK(rotation_cswap_count(1) == 2);
  CHECK(rotation_cswap_count(3) == 10);
  for (int L = 1; L <= 10; ++L) {
    const int n = (1 << L) - 1;
    long long oracle = 0;
    for (int j = 0; j < L; ++j) oracle += 2LL * (n + 1 - (1LL << j));
    CHECK(rotation_cswap_count(n) == oracle);
    CHECK(rotation_cswap_count(n) <= 2LL * n * L);
    const auto counts = gate_counts(build_rotation_circuit(n, 0.5));
    CHECK(counts.at("cswap") == oracle);
    CHECK(counts.at("mcphase") == 1);
  }
  CHECK_THROWS_AS(build_rotation_circuit(2, 0.5), DomainError);
}

TEST_CASE("gate list text roundtrip") {
  const auto g1 = build_rotation_circuit(1, kPi);
  const std::string text = export_circuit(g1);
  std::istringstream lines(text);
  std::string line;
  int cswaps = 0;
  while (std::getline(lines, line)) cswaps += line.rfind("CSWAP ", 0) == 0;
  CHECK(cswaps == 2);
  for (int n : {1, 3, 7, 15})
    for (double theta : {0.0, 0.1234567890123, -2.5, kPi}) {
      const auto g = build_rotation_circuit(n, theta);
      CHECK(parse_circuit(export_circuit(g)) == g);
    }
  CHECK_THROWS_AS(parse_circuit("FOO 1 2\n"), DomainError);
}

TEST_CASE("circuit simulation agrees with the dense unitary") {
  std::mt19937_64 rng(4);
  const auto g = build_rotation_circuit(3, 0.8);
  const Matrix u = circuit_to_dense(g, g.total_qubits()).entries();
  CHECK(max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())) < 1e-12);
  Vector x = testing::gaussian_state(static_cast<int>(u.rows()), rng);
  const Vector want = u * x;
  apply_circuit(g, x);
  CHECK(max_abs(x - want) < 1e-12);
}
