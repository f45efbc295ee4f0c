#include "reflectron/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "reflectron/errors.hpp"

namespace reflectron {

namespace {

void require_local_dim(int d) {
  if (d < 2) throw DomainError("local dimension must be at least 2");
}

}  // namespace

std::size_t tensor_dim(int d, int k) {
  if (d < 1 || k < 0) throw DomainError("invalid tensor shape");
  std::size_t dim = 1;
  const std::size_t limit = dense_budget();
  for (int i = 0; i < k; ++i) {
    if (dim > limit / static_cast<std::size_t>(d))
      throw BudgetError("dimension " + std::to_string(d) + "^" + std::to_string(k) +
                        " exceeds the dense budget of " + std::to_string(limit));
    dim *= static_cast<std::size_t>(d);
  }
  return dim;
}

PureState::PureState(Vector amplitudes, int local_dim, int factors)
    : amps_(std::move(amplitudes)), d_(local_dim), k_(factors) {
  if (static_cast<std::size_t>(amps_.size()) != tensor_dim(d_, k_))
    throw DomainError("state length does not match local_dim^factors");
  if (std::abs(amps_.norm() - 1.0) > 1e-12) throw DomainError("state is not normalized");
}

DenseOperator::DenseOperator(Matrix entries, int local_dim, int factors)
    : m_(std::move(entries)), d_(local_dim), k_(factors) {
  const auto dim = tensor_dim(d_, k_);
  if (static_cast<std::size_t>(m_.rows()) != dim || static_cast<std::size_t>(m_.cols()) != dim)
    throw DomainError("operator shape does not match local_dim^factors");
}

Isometry::Isometry(Matrix entries) : m_(std::move(entries)) {
  const Matrix gram = m_.adjoint() * m_;
  const Matrix eye = Matrix::Identity(m_.cols(), m_.cols());
  if ((gram - eye).cwiseAbs().maxCoeff() >= 1e-10)
    throw DomainError("columns are not orthonormal");
}

bool is_permutation(std::span<const int> perm) {
  std::vector<bool> seen(perm.size(), false);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= perm.size() || seen[p]) return false;
    seen[p] = true;
  }
  return true;
}

Permutation compose(std::span<const int> sigma, std::span<const int> tau) {
  Permutation out(tau.size());
  for (std::size_t t = 0; t < tau.size(); ++t) out[t] = sigma[tau[t]];
  return out;
}

Permutation invert(std::span<const int> perm) {
  Permutation out(perm.size());
  for (std::size_t t = 0; t < perm.size(); ++t) out[perm[t]] = static_cast<int>(t);
  return out;
}

namespace {

// Index of the permuted basis ket for every input index.
std::vector<std::size_t> permuted_indices(std::span<const int> perm, int d) {
  if (!is_permutation(perm) || perm.empty()) throw DomainError("invalid permutation");
  require_local_dim(d);
  const int k = static_cast<int>(perm.size());
  const std::size_t dim = tensor_dim(d, k);
  std::vector<std::size_t> weight(k);
  std::size_t w = 1;
  for (int s = k - 1; s >= 0; --s) {
    weight[s] = w;
    w *= d;
  }
  std::vector<std::size_t> out(dim);
  std::vector<int> digits(k, 0);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t target = 0;
    for (int t = 0; t < k; ++t) target += digits[t] * weight[perm[t]];
    out[idx] = target;
    for (int s = k - 1; s >= 0; --s) {
      if (++digits[s] < d) break;
      digits[s] = 0;
    }
  }
  return out;
}

}  // namespace

DenseOperator permutation_operator(std::span<const int> perm, int d) {
  const auto map = permuted_indices(perm, d);
  const auto dim = static_cast<Eigen::Index>(map.size());
  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) m(static_cast<Eigen::Index>(map[i]), i) = 1.0;
  return DenseOperator(std::move(m), d, static_cast<int>(perm.size()));
}

void apply_permutation(std::span<const int> perm, int d, std::span<const cplx> in,
                       std::span<cplx> out) {
  const auto map = permuted_indices(perm, d);
  if (in.size() != map.size() || out.size() != map.size())
    throw DomainError("vector length does not match the permutation operator");
  for (std::size_t i = 0; i < map.size(); ++i) out[map[i]] = in[i];
}

DenseOperator cyclic_permutation(int k, int d) {
  if (k < 1) throw DomainError("cyclic permutation needs at least one factor");
  Permutation perm(k);
  for (int t = 0; t < k; ++t) perm[t] = (t + 1) % k;
  return permutation_operator(perm, d);
}

DenseOperator partial_trace(const DenseOperator& x, std::span<const int> keep) {
  const int d = x.local_dim();
  const int k = x.factors();
  if (keep.empty()) throw DomainError("partial trace must keep at least one factor");
  std::vector<bool> kept(k, false);
  for (int f : keep) {
    if (f < 0 || f >= k || kept[f]) throw DomainError("invalid factor index in partial trace");
    kept[f] = true;
  }
  std::vector<int> keep_sorted, traced;
  for (int f = 0; f < k; ++f) (kept[f] ? keep_sorted : traced).push_back(f);

  std::vector<std::size_t> weight(k);
  std::size_t w = 1;
  for (int s = k - 1; s >= 0; --s) {
    weight[s] = w;
    w *= d;
  }
  auto offsets = [&](const std::vector<int>& factors) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) count *= d;
    std::vector<std::size_t> off(count);
    std::vector<int> digits(factors.size(), 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::size_t o = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) o += digits[i] * weight[factors[i]];
      off[idx] = o;
      for (int s = static_cast<int>(factors.size()) - 1; s >= 0; --s) {
        if (++digits[s] < d) break;
        digits[s] = 0;
      }
    }
    return off;
  };
  const auto kept_off = offsets(keep_sorted);
  const auto traced_off = offsets(traced);
  const auto out_dim = static_cast<Eigen::Index>(kept_off.size());
  Matrix out = Matrix::Zero(out_dim, out_dim);
  const Matrix& m = x.entries();
  for (Eigen::Index a = 0; a < out_dim; ++a)
    for (Eigen::Index b = 0; b < out_dim; ++b) {
      cplx acc = 0.0;
      for (std::size_t t : traced_off)
        acc += m(static_cast<Eigen::Index>(kept_off[a] + t), static_cast<Eigen::Index>(kept_off[b] + t));
      out(a, b) = acc;
    }
  return DenseOperator(std::move(out), d, static_cast<int>(keep_sorted.size()));
}

std::vector<std::vector<int>> sorted_multi_indices(int n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  if (n == 0) return {{}};
  while (true) {
    out.push_back(cur);
    int s = n - 1;
    while (s >= 0 && cur[s] == d - 1) --s;
    if (s < 0) break;
    const int v = cur[s] + 1;
    for (int t = s; t < n; ++t) cur[t] = v;
  }
  return out;
}

Isometry symmetric_encoder(int n, int d) {
  require_local_dim(d);
  if (n < 1) throw DomainError("encoder needs n >= 1");
  const std::size_t dim = tensor_dim(d, n);
  const auto labels = sorted_multi_indices(n, d);
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(labels.size()));
  for (std::size_t col = 0; col < labels.size(); ++col) {
    std::vector<int> word = labels[col];
    std::vector<std::size_t> rows;
    do {
      std::size_t idx = 0;
      for (int v : word) idx = idx * d + v;
      rows.push_back(idx);
    } while (std::next_permutation(word.begin(), word.end()));
    const double amp = 1.0 / std::sqrt(static_cast<double>(rows.size()));
    for (auto r : rows) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) = amp;
  }
  return Isometry(std::move(m));
}

DenseOperator symmetric_projector(int n, int d) {
  const Isometry enc = symmetric_encoder(n, d);
  return DenseOperator(enc.entries() * enc.entries().adjoint(), d, n);
}

boost::multiprecision::cpp_int sym_dim_exact(int n, int d) {
  if (n < 0 || d < 1) throw DomainError("sym_dim needs n >= 0 and d >= 1");
  boost::multiprecision::cpp_int result = 1;
  // binom(n+d-1, d-1) built incrementally; each prefix is itself a binomial.
  for (int i = 1; i <= d - 1; ++i) {
    result *= n + i;
    result /= i;
  }
  return result;
}

std::uint64_t sym_dim(int n, int d) {
  const auto exact = sym_dim_exact(n, d);
  if (exact > std::numeric_limits<std::uint64_t>::max())
    throw DomainError("symmetric subspace dimension exceeds 64 bits");
  return static_cast<std::uint64_t>(exact);
}

int sym_dim_qubits(int n, int d) {
  const auto exact = sym_dim_exact(n, d);
  if (exact <= 1) return 0;
  const boost::multiprecision::cpp_int m = exact - 1;
  return static_cast<int>(boost::multiprecision::msb(m)) + 1;
}

Vector haar_state(int d, std::mt19937_64& rng) {
  require_local_dim(d);
  std::normal_distribution<double> g;
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = cplx(g(rng), g(rng));
  return v / v.norm();
}

Matrix haar_unitary(int d, std::mt19937_64& rng) {
  require_local_dim(d);
  std::normal_distribution<double> g;
  Matrix z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = cplx(g(rng), g(rng)) / std::sqrt(2.0);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const cplx rjj = r(j, j);
    const double a = std::abs(rjj);
    q.col(j) *= (a > 0.0 ? rjj / a : cplx(1.0));
  }
  return q;
}

PureState haar_random_state(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return PureState(haar_state(d, rng), d, 1);
}

DenseOperator haar_random_unitary(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return DenseOperator(haar_unitary(d, rng), d, 1);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Vector tensor_power(const Vector& psi, int n) {
  if (n < 0) throw DomainError("negative tensor power");
  tensor_dim(static_cast<int>(psi.size()), n);
  Vector out = Vector::Ones(1);
  for (int i = 0; i < n; ++i) out = kron(out, psi);
  return out;
}

}  // namespace reflectron
