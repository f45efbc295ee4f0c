#pragma once

#include <cstdint>
#include <vector>

#include "reflectron/channels.hpp"

namespace reflectron {

struct Eigenpair {
  Vector psi;
  double alpha;
};

// Eigenpairs of a unitary sorted by phase. The first entry is the phase
// reference (alpha = 0); the others carry alpha in (-pi, pi] relative to it,
// so U = e^{i phi} prod_j e^{i alpha_j psi_j}.
std::vector<Eigenpair> eigendecompose_target(const Matrix& u);

// Signed K-bit binary fraction a with |theta - pi a| <= pi 2^{-K}, by
// truncation of |theta| / pi. Magnitudes are capped at 1 - 2^{-K}.
double binary_angle(double theta, int k);

struct RotationRecord {
  Vector psi;    // empty when only the budget was requested
  double alpha;  // target rotation angle
  double a;      // binary fraction; theta = pi a
  double theta;
  int n;         // program copies; 0 means the rotation is skipped
  double delta;  // encoder precision carried in the accounting
  int symmetric_qubits;
};

struct UniversalProgram {
  int d;
  double epsilon;
  int k;  // bits per phase
  std::vector<RotationRecord> rotations;
  int phase_qubits;      // (d-1) ceil(log2 ceil(6 pi (d-1)/eps))
  int copy_qubits;       // (d-1) ceil(log2 ceil(9 pi (d-1)/eps))
  int symmetric_qubits;  // sum_j ceil(log2 sym_dim(n_j, d))
  int total_qubits;
};

// alphas holds the d-1 non-reference angles.
UniversalProgram budget(int d, double epsilon, const std::vector<double>& alphas);
UniversalProgram plan_universal(const Matrix& u, double epsilon);

// Least-squares fit of program qubits against (d-1)^2 log2(1/eps) over
// eps = 2^{-k}, k in ks, with every alpha_j = pi.
struct ScalingFit {
  int d;
  double slope;                 // symmetric (quantum) program register
  double intercept;
  double slope_with_registers;  // including the classical phase and copy registers
};
ScalingFit fit_program_scaling(int d, const std::vector<int>& ks);

// Composition of the effective rotation channels, first rotation first.
class UniversalProcessor {
 public:
  explicit UniversalProcessor(UniversalProgram program);
  Matrix apply(const Matrix& x) const;
  Matrix operator()(const Matrix& x) const { return apply(x); }
  const UniversalProgram& program() const { return program_; }
  const std::vector<EffectiveChannel>& stages() const { return stages_; }

 private:
  UniversalProgram program_;
  std::vector<EffectiveChannel> stages_;
};

UniversalProcessor assemble_universal_channel(const Matrix& u, double epsilon);

struct VerifyReport {
  double epsilon;
  double measured;        // sampled lower bound on the diamond distance
  bool pass;              // measured <= epsilon
  double slack;           // epsilon - measured
  double phase_term;      // exact distance between U and its binary-phase version
  double rotation_term;   // sum_j equal-angle distance of each rotation
  double rotation_bound;  // sum_j 3 |pi a_j| / n_j
  double encoder_term;    // 0: the encoder is exact here
};

VerifyReport verify_budget(const Matrix& u, double epsilon, int trials, std::uint64_t seed);

// (d+1)/2 log2(c d^{-5} / eps)
double lower_bound_via_universal(int d, double epsilon, double c = 1.0);

// (d-1) log2(1/(8 (d^2-1)^2 eps)), the reflection bound at delta = 0 in bits.
double reflection_lower_bound_bits(int d, double epsilon);

}  // namespace reflectron
