#include "reflectron/universal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "reflectron/distances.hpp"
#include "reflectron/errors.hpp"

namespace reflectron {

namespace {

void require_unitary(const Matrix& u) {
  if (u.rows() != u.cols() || u.rows() < 2 ||
      (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() > 1e-10)
    throw DomainError("target must be a unitary on C^d with d >= 2");
}

double sign_of_leading(const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > 1e-12) return v(i).real() >= 0.0 ? 1.0 : -1.0;
  return 1.0;
}

int ceil_log2(double x) {
  if (x <= 1.0) return 0;
  return static_cast<int>(std::ceil(std::log2(x) - 1e-12));
}

}  // namespace

std::vector<Eigenpair> eigendecompose_target(const Matrix& u) {
  require_unitary(u);
  Eigen::ComplexSchur<Matrix> schur(u);
  const Matrix& q = schur.matrixU();
  const Matrix& t = schur.matrixT();
  std::vector<Eigenpair> pairs;
  std::vector<double> phases;
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    Vector v = q.col(i);
    for (Eigen::Index k = 0; k < v.size(); ++k)
      if (std::abs(v(k)) > 1e-12) {
        v *= std::conj(v(k)) / std::abs(v(k));
        break;
      }
    pairs.push_back({v, std::arg(t(i, i))});
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Eigenpair& x, const Eigenpair& y) {
    if (x.alpha != y.alpha) return x.alpha < y.alpha;
    return sign_of_leading(x.psi) > sign_of_leading(y.psi);
  });
  const double ref = pairs.front().alpha;
  for (auto& p : pairs) {
    double a = std::remainder(p.alpha - ref, 2.0 * std::numbers::pi);
    if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
    p.alpha = a;
  }
  pairs.front().alpha = 0.0;
  return pairs;
}

double binary_angle(double theta, int k) {
  if (k < 1 || k > 52) throw DomainError("binary_angle needs 1 <= K <= 52");
  const double scale = std::ldexp(1.0, k);
  const double digits = std::min(std::floor(std::abs(theta) / std::numbers::pi * scale), scale - 1.0);
  return std::copysign(digits / scale, theta);
}

UniversalProgram budget(int d, double epsilon, const std::vector<double>& alphas) {
  if (d < 2) throw DomainError("d must be at least 2");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (static_cast<int>(alphas.size()) != d - 1) throw DomainError("expected d-1 rotation angles");
  const double dm1 = d - 1.0;
  UniversalProgram prog;
  prog.d = d;
  prog.epsilon = epsilon;
  prog.k = ceil_log2(6.0 * std::numbers::pi * dm1 / epsilon);
  prog.k = std::max(prog.k, 1);
  prog.phase_qubits = (d - 1) * ceil_log2(std::ceil(6.0 * std::numbers::pi * dm1 / epsilon));
  prog.copy_qubits = (d - 1) * ceil_log2(std::ceil(9.0 * std::numbers::pi * dm1 / epsilon));
  prog.symmetric_qubits = 0;
  for (double alpha : alphas) {
    RotationRecord r;
    r.alpha = alpha;
    r.a = binary_angle(alpha, prog.k);
    r.theta = std::numbers::pi * r.a;
    const double copies = std::ceil(9.0 * dm1 * std::abs(alpha) / epsilon - 1e-12);
    if (copies > 1e9) throw BudgetError("copy count exceeds 1e9");
    r.n = static_cast<int>(copies);
    r.delta = epsilon / (6.0 * dm1);
    r.symmetric_qubits = sym_dim_qubits(r.n, d);
    prog.symmetric_qubits += r.symmetric_qubits;
    prog.rotations.push_back(std::move(r));
  }
  prog.total_qubits = prog.phase_qubits + prog.copy_qubits + prog.symmetric_qubits;
  return prog;
}

UniversalProgram plan_universal(const Matrix& u, double epsilon) {
  const auto pairs = eigendecompose_target(u);
  std::vector<double> alphas;
  for (std::size_t j = 1; j < pairs.size(); ++j) alphas.push_back(pairs[j].alpha);
  UniversalProgram prog = budget(static_cast<int>(u.rows()), epsilon, alphas);
  for (std::size_t j = 1; j < pairs.size(); ++j) prog.rotations[j - 1].psi = pairs[j].psi;
  return prog;
}

ScalingFit fit_program_scaling(int d, const std::vector<int>& ks) {
  if (ks.size() < 2) throw DomainError("scaling fit needs at least two epsilons");
  const std::vector<double> alphas(d - 1, std::numbers::pi);
  Eigen::MatrixXd design(static_cast<Eigen::Index>(ks.size()), 2);
  Eigen::VectorXd sym(static_cast<Eigen::Index>(ks.size()));
  Eigen::VectorXd total(static_cast<Eigen::Index>(ks.size()));
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const auto prog = budget(d, std::ldexp(1.0, -ks[i]), alphas);
    const auto row = static_cast<Eigen::Index>(i);
    design(row, 0) = (d - 1.0) * (d - 1.0) * ks[i];
    design(row, 1) = 1.0;
    sym(row) = prog.symmetric_qubits;
    total(row) = prog.total_qubits;
  }
  const auto qr = design.colPivHouseholderQr();
  const Eigen::Vector2d fs = qr.solve(sym);
  const Eigen::Vector2d ft = qr.solve(total);
  return {d, fs(0), fs(1), ft(0)};
}

UniversalProcessor::UniversalProcessor(UniversalProgram program) : program_(std::move(program)) {
  for (const auto& r : program_.rotations) {
    if (r.n == 0) continue;
    if (r.psi.size() != program_.d) throw DomainError("rotation record is missing its eigenvector");
    stages_.push_back(effective_channel(r_theta_coeffs(r.n, r.theta), r.psi));
  }
}

Matrix UniversalProcessor::apply(const Matrix& x) const {
  Matrix out = x;
  for (const auto& s : stages_) out = s.apply(out);
  return out;
}

UniversalProcessor assemble_universal_channel(const Matrix& u, double epsilon) {
  return UniversalProcessor(plan_universal(u, epsilon));
}

VerifyReport verify_budget(const Matrix& u, double epsilon, int trials, std::uint64_t seed) {
  const UniversalProcessor proc = assemble_universal_channel(u, epsilon);
  const int d = static_cast<int>(u.rows());
  VerifyReport rep;
  rep.epsilon = epsilon;
  const Matrix target = u;
  const ChannelFn target_ch = [target](const Matrix& x) -> Matrix {
    return target * x * target.adjoint();
  };
  const ChannelFn algo = [&proc](const Matrix& x) { return proc.apply(x); };
  rep.measured = sampled_diamond_lower_bound(target_ch, algo, d, trials, seed);
  rep.pass = rep.measured <= epsilon;
  rep.slack = epsilon - rep.measured;

  // The binary-phase unitary differs from U only by the phase truncation.
  const auto pairs = eigendecompose_target(u);
  Matrix exact = Matrix::Zero(d, d);
  Matrix truncated = Matrix::Zero(d, d);
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const Matrix proj = pairs[j].psi * pairs[j].psi.adjoint();
    exact += std::polar(1.0, pairs[j].alpha) * proj;
    const double theta = j == 0 ? 0.0 : proc.program().rotations[j - 1].theta;
    truncated += std::polar(1.0, theta) * proj;
  }
  rep.phase_term = diamond_unitary_channels(exact, truncated);
  rep.rotation_term = 0.0;
  rep.rotation_bound = 0.0;
  for (const auto& r : proc.program().rotations) {
    if (r.n == 0) continue;
    rep.rotation_term += equal_angle_distance(r.n, std::abs(r.theta));
    rep.rotation_bound += linear_bound(r.n, std::abs(r.theta));
  }
  rep.encoder_term = 0.0;
  return rep;
}

double lower_bound_via_universal(int d, double epsilon, double c) {
  if (d < 2 || !(epsilon > 0.0) || !(c > 0.0)) throw DomainError("invalid universal bound parameters");
  return (d + 1.0) / 2.0 * std::log2(c * std::pow(static_cast<double>(d), -5.0) / epsilon);
}

double reflection_lower_bound_bits(int d, double epsilon) {
  if (d < 2 || !(epsilon > 0.0)) throw DomainError("invalid reflection bound parameters");
  const double s = static_cast<double>(d) * d - 1.0;
  return (d - 1.0) * std::log2(1.0 / (8.0 * s * s * epsilon));
}

}  // namespace reflectron
