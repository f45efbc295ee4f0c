#include <numeric>

#include <doctest.h>

#include "reflectron/errors.hpp"
#include "reflectron/repthy.hpp"
#include "support.hpp"

using namespace reflectron;
using testing::max_abs;

namespace {

// Spin-j operators in the basis m = j, j-1, ..., -j.
struct SpinOps {
  Eigen::MatrixXd z, plus;
};

SpinOps spin_ops(int two_j) {
  const int dim = two_j + 1;
  const double j = two_j / 2.0;
  SpinOps s{Eigen::MatrixXd::Zero(dim, dim), Eigen::MatrixXd::Zero(dim, dim)};
  for (int i = 0; i < dim; ++i) {
    const double m = j - i;
    s.z(i, i) = m;
    if (i > 0) s.plus(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  return s;
}

// Total J^2 on spin j1 (x) spin j2.
Eigen::MatrixXd total_j2(int two_j1, int two_j2) {
  const SpinOps a = spin_ops(two_j1), b = spin_ops(two_j2);
  const Eigen::MatrixXd ia = Eigen::MatrixXd::Identity(two_j1 + 1, two_j1 + 1);
  const Eigen::MatrixXd ib = Eigen::MatrixXd::Identity(two_j2 + 1, two_j2 + 1);
  auto kr = [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    Eigen::MatrixXd out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      for (Eigen::Index k = 0; k < x.cols(); ++k) out.block(i * y.rows(), k * y.cols(), y.rows(), y.cols()) = x(i, k) * y;
    return out;
  };
  const Eigen::MatrixXd jz = kr(a.z, ib) + kr(ia, b.z);
  const Eigen::MatrixXd jp = kr(a.plus, ib) + kr(ia, b.plus);
  return jp.transpose() * jp + jz * jz + jz;
}

int index_of(int two_j, int two_m) { return (two_j - two_m) / 2; }

// Total S^2 on n qubits.
Matrix qubit_total_spin(int n) {
  const auto dim = static_cast<Eigen::Index>(1) << n;
  Matrix sz = Matrix::Zero(dim, dim), sp = Matrix::Zero(dim, dim);
  for (int q = 0; q < n; ++q) {
    const Eigen::Index bit = static_cast<Eigen::Index>(1) << (n - 1 - q);
    for (Eigen::Index i = 0; i < dim; ++i) {
      sz(i, i) += (i & bit) ? -0.5 : 0.5;
      if (i & bit) sp(i ^ bit, i) += 1.0;
    }
  }
  return sp.adjoint() * sp + sz * sz + sz;
}

}  // namespace

TEST_CASE("Clebsch-Gordan coefficients are orthonormal in both couplings") {
  for (int tj1 = 0; tj1 <= 12; ++tj1)
    for (int tj2 = 0; tj2 <= 12; ++tj2) {
      const int dim = (tj1 + 1) * (tj2 + 1);
      Eigen::MatrixXd u = Eigen::MatrixXd::Zero(dim, dim);
      int col = 0;
      for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
        for (int tM = tJ; tM >= -tJ; tM -= 2, ++col)
          for (int tm1 = tj1; tm1 >= -tj1; tm1 -= 2) {
            const int tm2 = tM - tm1;
            if (std::abs(tm2) > tj2) continue;
            u(index_of(tj1, tm1) * (tj2 + 1) + index_of(tj2, tm2), col) = cg_su2(tj1, tm1, tj2, tm2, tJ, tM);
          }
      REQUIRE(col == dim);
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
      CHECK((u.transpose() * u - id).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((u * u.transpose() - id).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("Clebsch-Gordan vectors are angular momentum eigenvectors") {
  for (int tj1 = 0; tj1 <= 6; ++tj1)
    for (int tj2 = 0; tj2 <= 6; ++tj2) {
      const Eigen::MatrixXd j2 = total_j2(tj1, tj2);
      for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
        for (int tM = tJ; tM >= -tJ; tM -= 2) {
          Eigen::VectorXd v = Eigen::VectorXd::Zero(j2.rows());
          for (int tm1 = tj1; tm1 >= -tj1; tm1 -= 2) {
            const int tm2 = tM - tm1;
            if (std::abs(tm2) <= tj2)
              v(index_of(tj1, tm1) * (tj2 + 1) + index_of(tj2, tm2)) = cg_su2(tj1, tm1, tj2, tm2, tJ, tM);
          }
          const double jj = tJ / 2.0 * (tJ / 2.0 + 1.0);
          CHECK((j2 * v - jj * v).cwiseAbs().maxCoeff() < 1e-11);
        }
    }
}

TEST_CASE("Clebsch-Gordan special values") {
  CHECK(cg_su2(1, 1, 1, -1, 2, 0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(cg_su2(1, 1, 1, 1, 2, 0) == 0.0);
  CHECK(cg_su2(2, 0, 2, 0, 6, 0) == 0.0);
  CHECK_THROWS_AS(cg_su2(1, 3, 1, -1, 2, 2), DomainError);
  for (int tj = 0; tj <= 10; ++tj) {
    // Singlet oracle: the null vector of J^2 on spin j (x) spin j.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(total_j2(tj, tj));
    const Eigen::VectorXd singlet = es.eigenvectors().col(0);
    CHECK(std::abs(es.eigenvalues()(0)) < 1e-10);
    const int top = index_of(tj, tj) * (tj + 1) + index_of(tj, -tj);
    const double sign = singlet(top) > 0 ? 1.0 : -1.0;
    for (int tm = tj; tm >= -tj; tm -= 2) {
      const double want = (((tj - tm) / 2) % 2 == 0 ? 1.0 : -1.0) / std::sqrt(tj + 1.0);
      CHECK(cg_su2(tj, tm, tj, -tm, 0, 0) == doctest::Approx(want).epsilon(1e-12));
      CHECK(sign * singlet(index_of(tj, tm) * (tj + 1) + index_of(tj, -tm)) == doctest::Approx(want).epsilon(1e-9));
    }
    // Completeness in the M = 0 sector.
    for (int tm = tj; tm >= -tj; tm -= 2)
      for (int tm2 = tj; tm2 >= -tj; tm2 -= 2) {
        double s = 0.0;
        for (int tJ = 0; tJ <= 2 * tj; tJ += 2) s += cg_su2(tj, tm, tj, -tm, tJ, 0) * cg_su2(tj, tm2, tj, -tm2, tJ, 0);
        CHECK(s == doctest::Approx(tm == tm2 ? 1.0 : 0.0).epsilon(1e-12));
      }
  }
  CHECK(magic_sum_check(1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(magic_sum_check(6) == doctest::Approx(std::sqrt(7.0)).epsilon(1e-13));
}

TEST_CASE("flat-spectrum linear system for qubits") {
  const auto s1 = conjecture_system_d2(1);
  REQUIRE(s1.a.rows() == 1);
  CHECK(std::abs(s1.a(0, 0) - s1.b(0)) < 1e-12);
  for (int n = 1; n <= 40; ++n) {
    const auto sys = conjecture_system_d2(n);
    CHECK(sys.b.sum() == doctest::Approx(1.0).epsilon(1e-12));
    const auto sol = solve_q_d2(n);
    CHECK(sol.residual < 1e-8);
    CHECK(sol.converged);
    CHECK(sol.in_unit_interval);
    CHECK(std::accumulate(sol.q.begin(), sol.q.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
    // Independent residual from the raw system.
    const Eigen::VectorXd q = Eigen::Map<const Eigen::VectorXd>(sol.q.data(), static_cast<Eigen::Index>(sol.q.size()));
    CHECK((sys.a * q - sys.b).cwiseAbs().maxCoeff() < 1e-8);
  }
  const auto two = solve_q_d2(2);
  REQUIRE(two.q.size() == 2);
  CHECK(two.q[0] == doctest::Approx(1.0 / 16.0).epsilon(1e-10));
  CHECK(two.q[1] == doctest::Approx(15.0 / 16.0).epsilon(1e-10));
}

TEST_CASE("partitions and Gelfand-Tsetlin patterns") {
  CHECK(partitions(4, 2).size() == 3);
  CHECK(partitions(4, 3).size() == 4);
  CHECK(partitions(5, 5).size() == 7);
  for (int d = 2; d <= 4; ++d)
    for (int n = 1; n <= 4; ++n) {
      for (const auto& lam : partitions(n, d)) {
        const auto pats = gt_patterns(lam);
        CHECK(static_cast<long long>(pats.size()) == weyl_dimension(lam, d));
        for (const auto& p : pats) {
          CHECK(p.interlaces());
          const auto w = p.weight();
          CHECK(std::accumulate(w.begin(), w.end(), 0) == n);
        }
        const auto blk = young_block(lam, d);
        CHECK(blk.basis.cols() == weyl_dimension(lam, d));
      }
      CHECK(weyl_dimension(partitions(n, d).front(), d) == static_cast<long long>(sym_dim(n, d)));
    }
  CHECK(weyl_dimension({2, 1, 0}, 3) == 8);
}

TEST_CASE("Young blocks span invariant weight-labelled subspaces") {
  std::mt19937_64 rng(1);
  for (int d = 2; d <= 3; ++d)
    for (int n = 1; n <= 4; ++n)
      for (const auto& lam : partitions(n, d)) {
        const auto blk = young_block(lam, d);
        const Matrix& b = blk.basis;
        CHECK(max_abs(b.adjoint() * b - Matrix::Identity(b.cols(), b.cols())) < 1e-10);
        CHECK(max_abs(b.imag()) == 0.0);
        // Invariance under U^{(x)n}.
        const Matrix u = testing::random_unitary(d, rng);
        Matrix un = Matrix::Identity(1, 1);
        for (int i = 0; i < n; ++i) un = kron(un, u);
        const Matrix ub = un * b;
        CHECK(max_abs(ub - b * (b.adjoint() * ub)) < 1e-10);
        // Weight vectors: diagonal torus elements act by prod z_i^{w_i}.
        Vector z(d);
        for (int i = 0; i < d; ++i) z(i) = std::polar(1.0, 0.3 + 0.7 * i);
        Matrix zn = Matrix::Identity(1, 1);
        for (int i = 0; i < n; ++i) zn = kron(zn, Matrix(z.asDiagonal()));
        for (Eigen::Index c = 0; c < b.cols(); ++c) {
          const auto w = blk.labels[c].weight();
          cplx phase = 1.0;
          for (int i = 0; i < d; ++i) phase *= std::pow(z(i), w[i]);
          CHECK(max_abs(zn * b.col(c) - phase * b.col(c)) < 1e-10);
        }
      }
}

TEST_CASE("reflection is diagonal with signs in the spin blocks") {
  Matrix r = Matrix::Identity(2, 2);
  r(1, 1) = -1.0;
  for (int n = 1; n <= 6; ++n) {
    Matrix rn = Matrix::Identity(1, 1);
    for (int i = 0; i < n; ++i) rn = kron(rn, r);
    for (int tj = n % 2; tj <= n; tj += 2) {
      const auto blk = spin_block(n, tj);
      const Matrix& b = blk.basis;
      CHECK(max_abs(b.adjoint() * b - Matrix::Identity(tj + 1, tj + 1)) < 1e-10);
      const Matrix m = b.adjoint() * rn * b;
      const Matrix off = m - Matrix(m.diagonal().asDiagonal());
      CHECK(off.cwiseAbs().sum() < 1e-9);
      for (Eigen::Index i = 0; i < m.rows(); ++i) CHECK(std::abs(std::abs(m(i, i)) - 1.0) < 1e-10);
      const double j = tj / 2.0;
      CHECK(max_abs(qubit_total_spin(n) * b - j * (j + 1.0) * b) < 1e-10);
    }
  }
}

TEST_CASE("commutant basis for a single pair") {
  const CommutantBasis basis(1, 2);
  REQUIRE(basis.size() == 2);
  CHECK(max_abs(basis.op(0).entries() - Matrix::Identity(4, 4)) < 1e-15);
  Vector phi = Vector::Zero(4);
  phi(0) = phi(3) = 1.0;
  CHECK(max_abs(basis.op(1).entries() - phi * phi.adjoint()) < 1e-15);
  CHECK(basis.gram()(0, 0) == 4.0);
  CHECK(basis.gram()(1, 1) == 4.0);
  CHECK(basis.gram()(0, 1) == 2.0);
}

TEST_CASE("twirl is the Haar average over U (x) conj(U)") {
  std::mt19937_64 rng(2);
  // Monte-Carlo oracle for n = 1, d = 2, X = |00><00|.
  Matrix x = Matrix::Zero(4, 4);
  x(0, 0) = 1.0;
  const auto basis = commutant_basis(1, 2);
  const Matrix tw = twirl(x, *basis);
  Matrix acc = Matrix::Zero(4, 4);
  const int draws = 40000;
  for (int i = 0; i < draws; ++i) {
    const Matrix u = testing::random_unitary(2, rng);
    const Matrix w = kron(u, Matrix(u.conjugate()));
    acc += w * x * w.adjoint();
  }
  CHECK(max_abs(acc / draws - tw) < 0.01);
  // Analytic twirl (I + eta_swap) / 6 from tr X = tr(eta_swap X) = 1.
  CHECK(max_abs(tw - (basis->op(0).entries() + basis->op(1).entries()) / 6.0) < 1e-12);

  for (int n = 1; n <= 2; ++n)
    for (int d = 2; d <= 3; ++d) {
      const auto b = commutant_basis(n, d);
      const int dim = static_cast<int>(b->dim());
      const Matrix y = testing::gaussian_matrix(dim, rng);
      const Matrix t = twirl(y, *b);
      CHECK(max_abs(twirl(t, *b) - t) < 1e-9);
      CHECK(std::abs(t.trace() - y.trace()) < 1e-9);
      for (int s = 0; s < 20; ++s) {
        const Matrix u = testing::random_unitary(d, rng);
        Matrix w = Matrix::Identity(1, 1);
        for (int i = 0; i < n; ++i) w = kron(w, u);
        for (int i = 0; i < n; ++i) w = kron(w, Matrix(u.conjugate()));
        CHECK(max_abs(w * t * w.adjoint() - t) < 1e-9);
      }
      const Vector chi = testing::gaussian_state(dim, rng);
      CHECK(max_abs(twirl_pure(chi, *b) - twirl(chi * chi.adjoint(), *b)) < 1e-10);
    }
}

TEST_CASE("probe entropy for qubits is flat") {
  for (int n = 1; n <= 3; ++n) {
    const auto sol = solve_q_d2(n);
    const Vector probe = build_probe_d2(n, sol.spec);
    CHECK(probe.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const auto rep = ensemble_entropy(n, 2, probe);
    CHECK(rep.entropy == doctest::Approx(std::log2((n + 1.0) * (n + 2.0) / 2.0)).epsilon(1e-6));
    CHECK(rep.entropy == doctest::Approx(entropy_target(n, 2)).epsilon(1e-6));
    // The GT construction gives the same ensemble.
    const auto rep_gt = ensemble_entropy(n, 2, build_probe(sol.spec));
    CHECK(rep_gt.entropy == doctest::Approx(rep.entropy).epsilon(1e-9));
  }
  const auto best = maximize_entropy_over_q(2, 2, 4, 1);
  CHECK(best.entropy == doctest::Approx(std::log2(6.0)).epsilon(1e-6));
  CHECK_FALSE(best.below_target);
}

TEST_CASE("probe entropy never exceeds the support bound") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CHECK(entropy_target(2, 3) == doctest::Approx(2.0 * std::log2(6.0)));
  for (int trial = 0; trial < 6; ++trial) {
    ProbeSpec spec{2, 3, partitions(2, 3), {}};
    for (std::size_t i = 0; i < spec.lambdas.size(); ++i) spec.q.push_back(unit(rng));
    const double total = std::accumulate(spec.q.begin(), spec.q.end(), 0.0);
    for (auto& q : spec.q) q /= total;
    const auto rep = ensemble_entropy(2, 3, build_probe(normalized_probe(spec)));
    CHECK(rep.rank <= 36);
    CHECK(rep.entropy <= entropy_target(2, 3) + 1e-9);
  }
  ProbeSpec bad{2, 3, partitions(2, 3), {0.5, 0.7}};
  CHECK_THROWS_AS(normalized_probe(bad), DomainError);
}

TEST_CASE("Lambert W") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lambert_w0(-std::exp(-1.0)) == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK_THROWS_AS(lambert_w0(-0.5), DomainError);
  for (double x : {-0.3, -0.1, 1e-8, 0.5, 1.0, 10.0, 1e6, 1e100}) {
    const double w = lambert_w0(x);
    CHECK(w * std::exp(w) == doctest::Approx(x).epsilon(1e-12));
  }
  for (int i = 0; i <= 400; ++i) {
    const double x = std::exp(1.0 + (std::log(1e12) - 1.0) * i / 400);
    const double l = std::log(x), ll = std::log(l);
    const double w = lambert_w0(x);
    const double e = std::exp(1.0);
    CHECK(w >= l - ll + ll / (2.0 * l) - 1e-12);
    CHECK(w <= l - ll + e / (e - 1.0) * ll / l + 1e-12);
  }
}

TEST_CASE("lower-bound function") {
  for (int n = 1; n <= 20; ++n) {
    const double binom = (n + 2.0) * (n + 1.0) / 2.0;
    CHECK(lower_bound_fd(0.0, n, 2) == doctest::Approx(std::log(binom) - std::log(2.0)).epsilon(1e-12));
  }
  CHECK(log_binomial(10, 3) == doctest::Approx(std::log(120.0)).epsilon(1e-12));
  for (int d = 2; d <= 4; ++d)
    for (double eps : {1e-4, 1e-6, 1e-9}) {
      const double n = n_of_eps(eps, d);
      CHECK(n * std::log(n) == doctest::Approx(1.0 / (2.0 * (d + 1.0) * std::sqrt(2.0 * eps))).epsilon(1e-9));
    }
  CHECK(final_bound_expression(1e-6, 3, 0.0) == doctest::Approx(2.0 * std::log(1.0 / (8.0 * 64.0 * 1e-6))));
  const auto fb = final_bound(1e-8, 2);
  CHECK(fb.asymptotic);
  CHECK(fb.delta == doctest::Approx(1.0 - fb.f_d / fb.leading));
  CHECK(fb.f_d == doctest::Approx(lower_bound_fd(1e-8, fb.n_star, 2)));
  CHECK_FALSE(final_bound(0.01, 3).asymptotic);
  // The bound grows with precision.
  CHECK(final_bound(1e-10, 3).f_d > final_bound(1e-8, 3).f_d);
}
