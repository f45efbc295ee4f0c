#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "reflectron/errors.hpp"
#include "reflectron/repthy.hpp"

namespace reflectron {

CommutantBasis::CommutantBasis(int n, int d) : n_(n), d_(d), dim_(0), rank_(0) {
  if (n < 1 || d < 2) throw DomainError("commutant basis needs n >= 1 and d >= 2");
  if (n > 3) throw BudgetError("commutant basis supports at most (2n)! = 720 operators");
  std::size_t dim = 1;
  for (int i = 0; i < 2 * n; ++i) dim *= d;
  if (dim > 1024) throw BudgetError("commutant basis operators exceed d^{2n} <= 2^10");
  dim_ = dim;
  const int k = 2 * n;
  std::size_t half = 1;
  for (int i = 0; i < n; ++i) half *= d;

  std::vector<std::size_t> weight(k);
  std::size_t w = 1;
  for (int s = k - 1; s >= 0; --s) {
    weight[s] = w;
    w *= d;
  }
  Permutation perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> digits(k);
  do {
    perms_.push_back(perm);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pat;
    pat.reserve(dim);
    std::fill(digits.begin(), digits.end(), 0);
    for (std::size_t in = 0; in < dim; ++in) {
      std::size_t out = 0;
      for (int t = 0; t < k; ++t) out += digits[t] * weight[perm[t]];
      // Transpose the last n factors: (o_hi o_lo, i_hi i_lo) -> (o_hi i_lo, i_hi o_lo).
      const std::size_t row = (out / half) * half + in % half;
      const std::size_t col = (in / half) * half + out % half;
      pat.emplace_back(static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col));
      for (int s = k - 1; s >= 0; --s) {
        if (++digits[s] < d) break;
        digits[s] = 0;
      }
    }
    std::sort(pat.begin(), pat.end());
    patterns_.push_back(std::move(pat));
  } while (std::next_permutation(perm.begin(), perm.end()));

  const auto m = static_cast<Eigen::Index>(perms_.size());
  gram_ = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i; j < m; ++j) {
      const auto& a = patterns_[i];
      const auto& b = patterns_[j];
      std::size_t common = 0;
      auto ia = a.begin();
      auto ib = b.begin();
      while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
          ++ia;
        } else if (*ib < *ia) {
          ++ib;
        } else {
          ++common;
          ++ia;
          ++ib;
        }
      }
      gram_(i, j) = gram_(j, i) = static_cast<double>(common);
    }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(gram_, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-10 * std::max(1.0, sv(0));
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) {
      inv(i) = 1.0 / sv(i);
      ++rank_;
    }
  gram_pinv_ = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

DenseOperator CommutantBasis::op(std::size_t i) const {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (const auto& [r, c] : patterns_.at(i)) m(r, c) = 1.0;
  return DenseOperator(std::move(m), d_, 2 * n_);
}

std::shared_ptr<const CommutantBasis> commutant_basis(int n, int d) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const CommutantBasis>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, d}];
  if (!slot) slot = std::make_shared<const CommutantBasis>(n, d);
  return slot;
}

namespace {

Matrix project(const Eigen::VectorXcd& v, const CommutantBasis& basis) {
  const Eigen::VectorXcd c = basis.gram_pinv().cast<cplx>() * v;
  const Eigen::VectorXcd fit = basis.gram().cast<cplx>() * c;
  const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  if ((fit - v).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw ConsistencyError("commutant projection: least-squares system is inconsistent");
  const auto dim = static_cast<Eigen::Index>(basis.dim());
  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const cplx ci = c(static_cast<Eigen::Index>(i));
    for (const auto& [r, col] : basis.pattern(i)) out(r, col) += ci;
  }
  return out;
}

}  // namespace

Matrix twirl(const Matrix& x, const CommutantBasis& basis) {
  const auto dim = static_cast<Eigen::Index>(basis.dim());
  if (x.rows() != dim || x.cols() != dim) throw DomainError("operator dimension mismatch");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    cplx acc = 0.0;
    for (const auto& [r, c] : basis.pattern(i)) acc += x(r, c);
    v(static_cast<Eigen::Index>(i)) = acc;
  }
  return project(v, basis);
}

Matrix twirl_pure(const Vector& chi, const CommutantBasis& basis) {
  const auto dim = static_cast<Eigen::Index>(basis.dim());
  if (chi.size() != dim) throw DomainError("vector dimension mismatch");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    cplx acc = 0.0;
    for (const auto& [r, c] : basis.pattern(i)) acc += chi(r) * std::conj(chi(c));
    v(static_cast<Eigen::Index>(i)) = acc;
  }
  return project(v, basis);
}

}  // namespace reflectron
