#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace reflectron {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Integer power d^k, throwing BudgetError if it exceeds the dense budget.
std::size_t tensor_dim(int d, int k);

class PureState {
 public:
  PureState(Vector amplitudes, int local_dim, int factors);
  const Vector& amplitudes() const { return amps_; }
  int local_dim() const { return d_; }
  int factors() const { return k_; }

 private:
  Vector amps_;
  int d_;
  int k_;
};

class DenseOperator {
 public:
  DenseOperator(Matrix entries, int local_dim, int factors);
  const Matrix& entries() const { return m_; }
  int local_dim() const { return d_; }
  int factors() const { return k_; }

 private:
  Matrix m_;
  int d_;
  int k_;
};

class Isometry {
 public:
  explicit Isometry(Matrix entries);
  const Matrix& entries() const { return m_; }

 private:
  Matrix m_;
};

// A permutation of k slots, 0-based: input slot t is moved to output slot
// perm[t].
using Permutation = std::vector<int>;

bool is_permutation(std::span<const int> perm);
Permutation compose(std::span<const int> sigma, std::span<const int> tau);  // sigma after tau
Permutation invert(std::span<const int> perm);

// Maps |i_1..i_k> to |i_{perm^-1(1)}..i_{perm^-1(k)}>.
DenseOperator permutation_operator(std::span<const int> perm, int d);

// Applies the permutation operator to a vector without forming the matrix.
void apply_permutation(std::span<const int> perm, int d, std::span<const cplx> in,
                       std::span<cplx> out);

// C = (1 2 ... k), moving slot t to slot t+1 mod k.
DenseOperator cyclic_permutation(int k, int d);

// Keeps the listed factors (0-based) in increasing order.
DenseOperator partial_trace(const DenseOperator& x, std::span<const int> keep);

DenseOperator symmetric_projector(int n, int d);

// binom(n+d-1, d-1); throws DomainError if it does not fit in 64 bits.
std::uint64_t sym_dim(int n, int d);
boost::multiprecision::cpp_int sym_dim_exact(int n, int d);
// ceil(log2(sym_dim(n, d))) computed exactly.
int sym_dim_qubits(int n, int d);

// Sorted multi-indices 0 <= i_1 <= ... <= i_n < d in lexicographic order.
std::vector<std::vector<int>> sorted_multi_indices(int n, int d);

Isometry symmetric_encoder(int n, int d);

PureState haar_random_state(int d, std::uint64_t seed);
DenseOperator haar_random_unitary(int d, std::uint64_t seed);
Vector haar_state(int d, std::mt19937_64& rng);
Matrix haar_unitary(int d, std::mt19937_64& rng);

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);
Vector tensor_power(const Vector& psi, int n);

}  // namespace reflectron
