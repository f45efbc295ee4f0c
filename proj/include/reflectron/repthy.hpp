#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "reflectron/tensor_core.hpp"

namespace reflectron {

// ---- SU(2) coupling -------------------------------------------------------

// Doubled spin labels: j = two_j / 2, m = two_m / 2.
struct SpinLabel {
  int two_j;
  int two_m;
};

// Condon-Shortley Clebsch-Gordan coefficient <j1 m1 j2 m2 | J M> from the
// Racah sum evaluated in exact rational arithmetic. Arguments are doubled.
// Returns 0 when M != m1 + m2 or the triangle condition fails.
double cg_su2(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M);

// sum_m (-1)^{j-m} <j m j -m | 0 0>, which equals sqrt(2j+1).
double magic_sum_check(int two_j);

// ---- d = 2 flat-spectrum system --------------------------------------------

struct LinearSystem {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  std::vector<int> row_J;      // J values of the rows
  std::vector<int> col_two_j;  // doubled j values of the columns
};

// Rows J in {n mod 2, ..., n}, columns j in {(n mod 2)/2, ..., n/2};
// A[J, j] = |sum_m <j m j -m | J 0>|^2 / (2j+1) for 2j >= J, b[J] = (2J+1)/binom(n+2,2).
LinearSystem conjecture_system_d2(int n);

// Probe weights q over irreps, keyed by partitions of n with at most d rows.
struct ProbeSpec {
  int n;
  int d;
  std::vector<std::vector<int>> lambdas;
  std::vector<double> q;
};

// Throws DomainError unless q is (after clipping values above -1e-10) a
// probability vector over valid partitions.
ProbeSpec normalized_probe(ProbeSpec spec);

// Partition (n/2 + j, n/2 - j) for a doubled spin.
std::vector<int> spin_partition(int n, int two_j);

struct QSolution {
  ProbeSpec spec;
  std::vector<int> two_j;
  std::vector<double> q;  // raw solution, before any clipping
  double residual;        // ||A q - b||_inf
  bool in_unit_interval;  // every q in [-1e-9, 1 + 1e-9]
  bool converged;         // residual < 1e-8
};

// LU with partial pivoting. Out-of-range weights are reported, not thrown.
QSolution solve_q_d2(int n);

// ---- Gelfand-Tsetlin patterns and irrep blocks ----------------------------

// rows[0] is the highest weight (d entries); rows[k] has d - k entries.
struct GTPattern {
  std::vector<std::vector<int>> rows;
  bool interlaces() const;
  // Number of basis index i (0-based) in the corresponding weight vector.
  std::vector<int> weight() const;
};

std::vector<GTPattern> gt_patterns(const std::vector<int>& highest_weight);

// Partitions of n with at most d nonzero parts, largest first.
std::vector<std::vector<int>> partitions(int n, int d);

// Weyl dimension of the U(d) irrep with highest weight lambda.
long long weyl_dimension(const std::vector<int>& lambda, int d);

// One copy of the irrep lambda inside (C^d)^{(x)n}: orthonormal real weight
// vectors spanning the range of a Young symmetrizer, labelled by GT patterns
// of matching weight. Vectors inside a weight space of multiplicity > 1 are
// an SVD basis of that space.
struct IrrepBlock {
  std::vector<int> lambda;
  std::vector<GTPattern> labels;
  Matrix basis;  // d^n x dim
};

IrrepBlock young_block(const std::vector<int>& lambda, int d);

// Spin-j block of (C^2)^{(x)n}: highest weight vector with positive leading
// amplitude, lowered by S_- whose matrix elements are then nonnegative.
// Columns ordered m = j, j-1, ..., -j.
struct SpinBlock {
  int two_j;
  std::vector<SpinLabel> labels;
  Matrix basis;  // 2^n x (2j+1)
};

SpinBlock spin_block(int n, int two_j);

// ---- Commutant of U^{(x)n} (x) conj(U)^{(x)n} -----------------------------

// Partially transposed permutation operators eta_pi over S_{2n}, stored as
// 0/1 patterns, with the Hilbert-Schmidt Gram matrix.
class CommutantBasis {
 public:
  CommutantBasis(int n, int d);
  int n() const { return n_; }
  int d() const { return d_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return perms_.size(); }
  const std::vector<Permutation>& perms() const { return perms_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  const Eigen::MatrixXd& gram_pinv() const { return gram_pinv_; }
  int gram_rank() const { return rank_; }
  // Nonzero positions (row, col) of eta_i.
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pattern(std::size_t i) const {
    return patterns_[i];
  }
  DenseOperator op(std::size_t i) const;

 private:
  int n_;
  int d_;
  std::size_t dim_;
  std::vector<Permutation> perms_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> patterns_;
  Eigen::MatrixXd gram_;
  Eigen::MatrixXd gram_pinv_;
  int rank_;
};

// Shared, lazily built basis for (n, d).
std::shared_ptr<const CommutantBasis> commutant_basis(int n, int d);

// Hilbert-Schmidt projection onto span(eta_pi) through the Gram pseudo-inverse.
Matrix twirl(const Matrix& x, const CommutantBasis& basis);
// Same projection for x = |chi><chi| without forming x.
Matrix twirl_pure(const Vector& chi, const CommutantBasis& basis);

// sum_lambda sqrt(q_lambda / d_lambda) sum_L |L> (x) conj|L>.
Vector build_probe(const ProbeSpec& spec);
Vector build_probe_d2(int n, const ProbeSpec& spec);

struct EntropyReport {
  double entropy;  // bits
  int rank;
  Eigen::VectorXd eigenvalues;
};

// Entropy of twirl((R^{(x)n} (x) I) probe probe^dagger (...)^dagger) with
// R = I - 2|d-1><d-1|.
EntropyReport ensemble_entropy(int n, int d, const Vector& probe);

// log2 binom(n+2, 2) for d = 2, 2 log2 binom(n+d-1, d-1) otherwise.
double entropy_target(int n, int d);

struct EntropyMaximum {
  ProbeSpec spec;
  double entropy;
  double target;
  int rank;
  bool below_target;  // entropy < target (1 - 1e-4)
  int evaluations;
};

EntropyMaximum maximize_entropy_over_q(int n, int d, int restarts = 20, std::uint64_t seed = 0);

// ---- Lower-bound formulas --------------------------------------------------

// Principal branch of Lambert W by Halley iteration.
double lambert_w0(double x);

// ln binom(m, k) for real m >= k >= 0.
double log_binomial(double m, double k);

double lower_bound_fd(double epsilon, double n, int d);
double n_of_eps(double epsilon, int d);

struct FinalBound {
  double n_star;
  double f_d;           // lower bound on ln d_P at n_star
  double leading;       // (d-1) ln(1/(8 (d^2-1)^2 eps)), or ln(1/eps) for d = 2
  double delta;         // 1 - f_d / leading
  bool asymptotic;      // eps <= 1e-3 / (d+1)^2
};

FinalBound final_bound(double epsilon, int d);
// (1 - delta) * leading
double final_bound_expression(double epsilon, int d, double delta);

}  // namespace reflectron
