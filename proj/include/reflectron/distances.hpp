#pragma once

#include <cstdint>

#include "reflectron/channels.hpp"
#include "reflectron/cyclic_algebra.hpp"

namespace reflectron {

// Where the maximum over the worst-case family sits: p = 0 (A), an interior
// critical point (B), or the boundary between the two.
enum class Domain { A, B, Boundary };
const char* domain_name(Domain dom);

// sqrt(p)|0>|psi> + sqrt((1-p)/(d-1)) sum_i |i>|psi_i> on C^d (x) C^d, with
// {psi_i} the last d-1 columns of psi_frame(psi).
class PhiP {
 public:
  PhiP(double p, Vector psi);
  double p() const { return p_; }
  const Vector& state() const { return state_; }

 private:
  double p_;
  Vector state_;
};

double trace_norm(const Matrix& x);

// The two scalars the covariant distance depends on.
struct CovariantParams {
  double a;  // 1 - |c0|^2
  double b;  // |c~0 conj(c0) - e^{i alpha}|
};
CovariantParams covariant_params(const CyclicElement& e, double alpha);
Domain classify(const CovariantParams& cp, double tol = 1e-10);

// (1-p) a + sqrt((1-p)^2 a^2 + 4 p (1-p) b^2)
double distance_at_p_closed(const CovariantParams& cp, double p);

// Trace norm of (I (x) (R_psi(alpha) - E))(phi_p) computed densely through
// the effective channel and by the closed form; throws ConsistencyError if
// they differ by more than 1e-9. Returns the closed form.
double distance_at_p(const CyclicElement& e, const Vector& psi, double alpha, double p);

// Dense trace norm on the worst-case family for arbitrary channels.
double covariant_distance_at_p(const ChannelFn& target, const ChannelFn& algorithm,
                               const Vector& psi, double p);

struct DiamondResult {
  double value;
  double argmax_p;
  Domain branch;
};

// Analytic critical point, cross-checked against a 1001-point grid refined by
// golden section (ConsistencyError beyond 1e-8).
DiamondResult diamond_covariant(const CyclicElement& e, double alpha);

// Grid plus golden-section maximization of covariant_distance_at_p for
// channels without a closed form.
DiamondResult diamond_covariant_numeric(const ChannelFn& target, const ChannelFn& algorithm,
                                        const Vector& psi, int grid = 1001);

// Two-branch formula for alpha in [0, pi].
double closed_form_rotation_distance(const CyclicElement& e, double alpha);

double equal_angle_distance(int n, double alpha);
double linear_bound(int n, double alpha);

// Diamond distance between the unitary channels of U and V from the smallest
// arc covering the spectrum of U^dagger V.
double diamond_unitary_channels(const Matrix& u, const Matrix& v);

// Max over Haar-random pure inputs on C^d (x) C^d, each locally refined, of
// the trace norm of (I (x) (A - B))(phi). Nondecreasing in trials.
double sampled_diamond_lower_bound(const ChannelFn& a, const ChannelFn& b, int d, int trials,
                                   std::uint64_t seed);

// Golden-section maximization of f on [lo, hi].
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol, double* arg = nullptr);

}  // namespace reflectron
