#include "reflectron/distances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "reflectron/errors.hpp"
#include "reflectron/kernels.hpp"

namespace reflectron {

const char* domain_name(Domain dom) {
  switch (dom) {
    case Domain::A:
      return "A";
    case Domain::B:
      return "B";
    default:
      return "boundary";
  }
}

PhiP::PhiP(double p, Vector psi) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  const Matrix frame = psi_frame(psi);
  const auto d = psi.size();
  state_ = Vector::Zero(d * d);
  state_.segment(0, d) = std::sqrt(p) * frame.col(0);
  const double w = std::sqrt((1.0 - p) / static_cast<double>(d - 1));
  for (Eigen::Index i = 1; i < d; ++i) state_.segment(i * d, d) = w * frame.col(i);
}

double trace_norm(const Matrix& x) {
  if (x.rows() != x.cols()) throw DomainError("trace norm needs a square operator");
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  if ((x - x.adjoint()).cwiseAbs().maxCoeff() <= 1e-13 * scale) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(x, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues().sum();
}

CovariantParams covariant_params(const CyclicElement& e, double alpha) {
  cplx ct0 = 0.0;
  for (cplx c : e.coeffs()) ct0 += c;
  const cplx c0 = e[0];
  return {1.0 - std::norm(c0), std::abs(ct0 * std::conj(c0) - std::polar(1.0, alpha))};
}

Domain classify(const CovariantParams& cp, double tol) {
  const double gap = cp.a - cp.b;
  if (gap >= tol) return Domain::A;
  if (gap <= -tol) return Domain::B;
  return Domain::Boundary;
}

double distance_at_p_closed(const CovariantParams& cp, double p) {
  const double q = 1.0 - p;
  const double t = q * cp.a;
  return t + std::sqrt(t * t + 4.0 * p * q * cp.b * cp.b);
}

double covariant_distance_at_p(const ChannelFn& target, const ChannelFn& algorithm,
                               const Vector& psi, double p) {
  const PhiP phi(p, psi);
  const Matrix rho = phi.state() * phi.state().adjoint();
  const int d = static_cast<int>(psi.size());
  const Matrix diff = apply_on_system(target, rho, d, d) - apply_on_system(algorithm, rho, d, d);
  return trace_norm(diff);
}

double distance_at_p(const CyclicElement& e, const Vector& psi, double alpha, double p) {
  const double closed = distance_at_p_closed(covariant_params(e, alpha), p);
  const double dense = covariant_distance_at_p(rotation_as_channel(psi, alpha),
                                               as_channel(effective_channel(e, psi)), psi, p);
  if (std::abs(dense - closed) > 1e-9)
    throw ConsistencyError("dense and closed-form distances disagree at p=" + std::to_string(p) +
                           ": " + std::to_string(dense) + " vs " + std::to_string(closed));
  return closed;
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol, double* arg) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  // Endpoints are candidates too: the maximum may sit on the boundary.
  double best_x = 0.5 * (a + b), best = f(best_x);
  for (double x : {lo, hi}) {
    const double v = f(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  if (arg) *arg = best_x;
  return best;
}

namespace {

struct GridMax {
  double value;
  double arg;
};

GridMax grid_then_golden(const std::function<double(double)>& f, const std::vector<double>& values,
                         int grid) {
  const auto it = std::max_element(values.begin(), values.end());
  const int k = static_cast<int>(it - values.begin());
  const double h = 1.0 / (grid - 1);
  const double lo = std::max(0.0, (k - 1) * h);
  const double hi = std::min(1.0, (k + 1) * h);
  double arg = k * h;
  double best = golden_section_max(f, lo, hi, 1e-12, &arg);
  if (*it > best) {
    best = *it;
    arg = k * h;
  }
  return {best, arg};
}

}  // namespace

DiamondResult diamond_covariant(const CyclicElement& e, double alpha) {
  const CovariantParams cp = covariant_params(e, alpha);
  const Domain branch = classify(cp);
  double p_star = 0.0;
  if (cp.a < cp.b) p_star = (cp.b - cp.a) / (2.0 * cp.b - cp.a);
  const double analytic = distance_at_p_closed(cp, p_star);

  constexpr int grid = 1001;
  std::vector<double> ps(grid), vals(grid);
  for (int i = 0; i < grid; ++i) ps[i] = static_cast<double>(i) / (grid - 1);
  kernels::covariant_profile(cp.a, cp.b * cp.b, ps.data(), vals.data(), grid);
  const auto numeric =
      grid_then_golden([&](double p) { return distance_at_p_closed(cp, p); }, vals, grid);
  if (std::abs(numeric.value - analytic) > 1e-8)
    throw ConsistencyError("critical-point and grid maxima disagree: " +
                           std::to_string(analytic) + " vs " + std::to_string(numeric.value));
  return {analytic, p_star, branch};
}

DiamondResult diamond_covariant_numeric(const ChannelFn& target, const ChannelFn& algorithm,
                                        const Vector& psi, int grid) {
  if (grid < 3) throw DomainError("grid needs at least 3 points");
  auto f = [&](double p) { return covariant_distance_at_p(target, algorithm, psi, p); };
  std::vector<double> vals(grid);
  for (int i = 0; i < grid; ++i) vals[i] = f(static_cast<double>(i) / (grid - 1));
  const auto best = grid_then_golden(f, vals, grid);
  const Domain branch = best.arg <= 1e-9 ? Domain::A : Domain::B;
  return {best.value, best.arg, branch};
}

double closed_form_rotation_distance(const CyclicElement& e, double alpha) {
  if (!(alpha >= 0.0 && alpha <= std::numbers::pi))
    throw DomainError("alpha must lie in [0, pi]");
  const CovariantParams cp = covariant_params(e, alpha);
  if (cp.b <= cp.a) return 2.0 * cp.a;
  return 2.0 * cp.b * cp.b / (2.0 * cp.b - cp.a);
}

double equal_angle_distance(int n, double alpha) {
  if (n < 1) throw DomainError("n must be at least 1");
  if (!(alpha >= 0.0 && alpha <= std::numbers::pi))
    throw DomainError("alpha must lie in [0, pi]");
  if (alpha == 0.0) return 0.0;
  const double nn = n;
  const double threshold = 2.0 * std::asin(std::min(1.0, (nn + 1.0) / (2.0 * nn)));
  if (alpha >= threshold) return 4.0 * nn * (1.0 - std::cos(alpha)) / ((nn + 1.0) * (nn + 1.0));
  return 2.0 / ((nn + 1.0) / std::sin(alpha / 2.0) - nn);
}

double linear_bound(int n, double alpha) {
  if (n < 1) throw DomainError("n must be at least 1");
  return 3.0 * alpha / n;
}

double diamond_unitary_channels(const Matrix& u, const Matrix& v) {
  for (const Matrix* m : {&u, &v}) {
    if (m->rows() != m->cols() ||
        (m->adjoint() * *m - Matrix::Identity(m->rows(), m->cols())).cwiseAbs().maxCoeff() > 1e-10)
      throw DomainError("diamond_unitary_channels needs unitary inputs");
  }
  if (u.rows() != v.rows()) throw DomainError("unitaries act on different dimensions");
  Eigen::ComplexEigenSolver<Matrix> es(u.adjoint() * v, false);
  std::vector<double> phases;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    phases.push_back(std::arg(es.eigenvalues()(i)));
  std::sort(phases.begin(), phases.end());
  // The covering arc is the complement of the largest gap between phases.
  double largest_gap = phases.front() + 2.0 * std::numbers::pi - phases.back();
  for (std::size_t i = 1; i < phases.size(); ++i)
    largest_gap = std::max(largest_gap, phases[i] - phases[i - 1]);
  const double arc = 2.0 * std::numbers::pi - largest_gap;
  if (arc >= std::numbers::pi) return 2.0;
  return 2.0 * std::sin(arc / 2.0);
}

double sampled_diamond_lower_bound(const ChannelFn& a, const ChannelFn& b, int d, int trials,
                                   std::uint64_t seed) {
  if (d < 2 || trials < 0) throw DomainError("invalid sampling parameters");
  auto value = [&](const Vector& phi) {
    const Matrix rho = phi * phi.adjoint();
    return trace_norm(apply_on_system(a, rho, d, d) - apply_on_system(b, rho, d, d));
  };
  constexpr int refine_steps = 24;
  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(t));
    Vector phi = haar_state(d * d, rng);
    double val = value(phi);
    double step = 0.3;
    std::normal_distribution<double> g;
    for (int s = 0; s < refine_steps; ++s) {
      Vector trial = phi;
      for (Eigen::Index i = 0; i < trial.size(); ++i) trial(i) += step * cplx(g(rng), g(rng));
      trial /= trial.norm();
      const double tv = value(trial);
      if (tv > val) {
        val = tv;
        phi = trial;
      } else {
        step *= 0.75;
      }
    }
    best = std::max(best, val);
  }
  return best;
}

}  // namespace reflectron
