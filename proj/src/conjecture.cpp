#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "reflectron/errors.hpp"
#include "reflectron/repthy.hpp"

namespace reflectron {

namespace {

// |sum_m <j m j -m | J 0>|^2 / (2j+1); independent of n, so cached.
double coupling_weight(int two_j, int J) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, double> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    const auto it = cache.find({two_j, J});
    if (it != cache.end()) return it->second;
  }
  double sum = 0.0;
  for (int two_m = -two_j; two_m <= two_j; two_m += 2)
    sum += cg_su2(two_j, two_m, two_j, -two_m, 2 * J, 0);
  const double value = sum * sum / (two_j + 1.0);
  std::lock_guard<std::mutex> lock(mutex);
  cache[{two_j, J}] = value;
  return value;
}

}  // namespace

std::vector<int> spin_partition(int n, int two_j) {
  if (two_j < 0 || two_j > n || (n - two_j) % 2 != 0) throw DomainError("invalid spin for n");
  return {(n + two_j) / 2, (n - two_j) / 2};
}

LinearSystem conjecture_system_d2(int n) {
  if (n < 1) throw DomainError("n must be at least 1");
  LinearSystem sys;
  for (int J = n % 2; J <= n; J += 2) sys.row_J.push_back(J);
  for (int two_j = n % 2; two_j <= n; two_j += 2) sys.col_two_j.push_back(two_j);
  const auto size = static_cast<Eigen::Index>(sys.row_J.size());
  sys.a = Eigen::MatrixXd::Zero(size, size);
  sys.b = Eigen::VectorXd::Zero(size);
  const double sym = static_cast<double>(sym_dim(n, 3));  // binom(n+2, 2)
  for (Eigen::Index r = 0; r < size; ++r) {
    const int J = sys.row_J[r];
    sys.b(r) = (2.0 * J + 1.0) / sym;
    for (Eigen::Index c = 0; c < size; ++c) {
      const int two_j = sys.col_two_j[c];
      if (two_j >= J) sys.a(r, c) = coupling_weight(two_j, J);
    }
  }
  return sys;
}

ProbeSpec normalized_probe(ProbeSpec spec) {
  if (spec.lambdas.size() != spec.q.size()) throw DomainError("probe labels and weights differ in size");
  double total = 0.0;
  for (std::size_t i = 0; i < spec.q.size(); ++i) {
    const auto& lam = spec.lambdas[i];
    if (static_cast<int>(lam.size()) > spec.d ||
        std::accumulate(lam.begin(), lam.end(), 0) != spec.n ||
        !std::is_sorted(lam.rbegin(), lam.rend()) || (!lam.empty() && lam.back() < 0))
      throw DomainError("probe label is not a partition of n with at most d rows");
    if (spec.q[i] < -1e-10) throw DomainError("probe weight is negative");
    spec.q[i] = std::max(0.0, spec.q[i]);
    total += spec.q[i];
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("probe weights do not sum to 1");
  return spec;
}

QSolution solve_q_d2(int n) {
  const LinearSystem sys = conjecture_system_d2(n);
  Eigen::FullPivLU<Eigen::MatrixXd> rank_check(sys.a);
  if (!rank_check.isInvertible()) throw ConsistencyError("flat-spectrum system is singular");
  const Eigen::VectorXd q = sys.a.partialPivLu().solve(sys.b);
  QSolution out;
  out.two_j = sys.col_two_j;
  out.q.assign(q.data(), q.data() + q.size());
  out.residual = (sys.a * q - sys.b).cwiseAbs().maxCoeff();
  out.converged = out.residual < 1e-8;
  out.in_unit_interval = true;
  for (double v : out.q)
    if (v < -1e-9 || v > 1.0 + 1e-9) out.in_unit_interval = false;
  out.spec.n = n;
  out.spec.d = 2;
  for (std::size_t i = 0; i < out.q.size(); ++i) {
    out.spec.lambdas.push_back(spin_partition(n, out.two_j[i]));
    out.spec.q.push_back(std::clamp(out.q[i], 0.0, 1.0));
  }
  return out;
}

}  // namespace reflectron
