#pragma once

#include <functional>
#include <span>

#include <nlohmann/json.hpp>

#include "reflectron/cyclic_algebra.hpp"
#include "reflectron/tensor_core.hpp"

namespace reflectron {

using ChannelFn = std::function<Matrix(const Matrix&)>;

// e^{i alpha psi} = I + (e^{i alpha} - 1)|psi><psi|
Matrix rotation_unitary(const Vector& psi, double alpha);
Matrix rotation_channel(const Vector& psi, double alpha, const Matrix& x);

// tr_P[V (X (x) psi^{(x)n}) V^dagger], computed from the vectors V(|a> (x) psi^n).
Matrix dense_reflection_channel(const CyclicElement& e, const Vector& psi, const Matrix& x);

// E(X) = a_X X + a_PX P X + a_XP X P + a_tr tr(X) P + a_trP tr(P X) P, P = |psi><psi|.
class EffectiveChannel {
 public:
  EffectiveChannel(Vector psi, cplx a_x, cplx a_px, cplx a_xp, cplx a_tr, cplx a_trp);
  Matrix apply(const Matrix& x) const;
  Matrix operator()(const Matrix& x) const { return apply(x); }
  int dim() const { return static_cast<int>(psi_.size()); }
  const Vector& psi() const { return psi_; }
  cplx a_x() const { return a_x_; }
  cplx a_px() const { return a_px_; }
  cplx a_xp() const { return a_xp_; }
  cplx a_tr() const { return a_tr_; }
  cplx a_trp() const { return a_trp_; }

 private:
  Vector psi_;
  cplx a_x_, a_px_, a_xp_, a_tr_, a_trp_;
};

EffectiveChannel effective_channel(const CyclicElement& e, const Vector& psi);

nlohmann::json to_json(const EffectiveChannel& ch);
EffectiveChannel effective_channel_from_json(const nlohmann::json& j);

// Applies e^{i theta_k SWAP} between the system and a fresh copy of psi,
// tracing the copy out after each step.
Matrix lmr_sequential_dense(std::span<const double> thetas, const Vector& psi, const Matrix& x);

// Unitary whose first column is psi; the remaining columns come from
// Gram-Schmidt on the computational basis with the largest-overlap vector
// dropped.
Matrix psi_frame(const Vector& psi);

// Estimate psi from n copies by the optimal covariant measurement, then
// reflect about the estimate.
class MeasureReflectChannel {
 public:
  MeasureReflectChannel(Vector psi, int n);
  Matrix apply(const Matrix& x) const;
  Matrix operator()(const Matrix& x) const { return apply(x); }
  int copies() const { return n_; }

 private:
  Vector psi_;
  Matrix frame_;
  int n_;
  int d_;
};

Matrix mr_channel(const Vector& psi, int n, const Matrix& x);

// sum_ij |i><j| (x) E(|i><j|)
Matrix choi(const ChannelFn& channel, int d);
Matrix choi(const EffectiveChannel& channel);

// tr(P rho) P + tr((I-P) rho) (I-P) / (d-1)
Matrix group_twirl_state(const Matrix& rho, const Vector& psi);

// (I_R (x) E)(rho) for rho on C^{d_r} (x) C^{d_s}.
Matrix apply_on_system(const ChannelFn& channel, const Matrix& rho, int d_r, int d_s);

ChannelFn as_channel(const EffectiveChannel& ch);
ChannelFn rotation_as_channel(const Vector& psi, double alpha);

// Throws DomainError unless psi has unit norm within 1e-10.
void require_normalized(const Vector& psi);

}  // namespace reflectron
