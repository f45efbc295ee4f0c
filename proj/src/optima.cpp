#include "reflectron/optima.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "reflectron/errors.hpp"
#include "reflectron/kernels.hpp"

namespace reflectron {

namespace {

void require_copies(int n) {
  if (n < 1) throw DomainError("n must be at least 1");
}

// 1 - |c0|^2 and |c~0 conj(c0) + 1| at (r, u), reflection target.
std::pair<double, double> landscape_params(int n, double r, double u) {
  const double nr = n * r;
  const double n1 = n + 1.0;
  const double a = 1.0 - (1.0 + 2.0 * nr * std::cos(u) + nr * nr) / (n1 * n1);
  const double re = n + 2.0 + nr * std::cos(u);
  const double im = nr * std::sin(u);
  return {a, std::sqrt(re * re + im * im) / n1};
}

}  // namespace

double landscape_value(int n, double r, double u) {
  require_copies(n);
  const auto [a, x] = landscape_params(n, r, u);
  return a >= x ? 2.0 * a : 2.0 * x * x / (2.0 * x - a);
}

Landscape landscape(int n, int grid_r, int grid_u) {
  require_copies(n);
  if (grid_r < 2 || grid_u < 2) throw DomainError("landscape grids need at least 2 points");
  Landscape out{n, {}, {}};
  out.points.reserve(static_cast<std::size_t>(grid_r) * grid_u);
  std::vector<double> us(grid_u), cs(grid_u), ss(grid_u), row(grid_u);
  for (int k = 0; k < grid_u; ++k) {
    us[k] = 2.0 * std::numbers::pi * k / grid_u;
    cs[k] = std::cos(us[k]);
    ss[k] = std::sin(us[k]);
  }
  for (int i = 0; i < grid_r; ++i) {
    const double r = static_cast<double>(i) / (grid_r - 1);
    kernels::landscape_row(n, r, cs.data(), ss.data(), row.data(), grid_u);
    for (int k = 0; k < grid_u; ++k) out.points.push_back({r, us[k], row[k]});

    auto gap = [&](double u) {
      const auto [a, x] = landscape_params(n, r, u);
      return a - x;
    };
    for (int k = 0; k < grid_u; ++k) {
      const double lo = us[k];
      const double hi = (k + 1 < grid_u) ? us[k + 1] : 2.0 * std::numbers::pi;
      double glo = gap(lo), ghi = gap(hi);
      if ((glo < 0.0) == (ghi < 0.0)) continue;
      double a = lo, b = hi;
      for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (a + b);
        if ((gap(m) < 0.0) == (glo < 0.0)) {
          a = m;
        } else {
          b = m;
        }
      }
      const double u = 0.5 * (a + b);
      if (u < 2.0 * std::numbers::pi) out.boundary.push_back({r, u, landscape_value(n, r, u)});
    }
  }
  return out;
}

double critical_u(int n, double r) {
  require_copies(n);
  const double nn = n;
  const double arg = (nn * nn * nn * (r * r * r - 3.0 * r) - 12.0 * nn * nn * r - 12.0 * nn * r) /
                     (2.0 * std::pow(nn + 2.0, 3));
  return std::acos(std::clamp(arg, -1.0, 1.0));
}

double theta_star(int n, double alpha, double tol) {
  require_copies(n);
  if (!(alpha >= 0.0 && alpha <= std::numbers::pi)) throw DomainError("alpha must lie in [0, pi]");
  auto neg = [&](double theta) {
    return -closed_form_rotation_distance(r_theta_coeffs(n, theta), alpha);
  };
  const double third = std::numbers::pi / 3.0;
  double best_theta = 0.0;
  double best = -1e300;
  for (int b = 0; b < 3; ++b) {
    double arg = 0.0;
    const double v = golden_section_max(neg, b * third, (b + 1) * third, tol, &arg);
    if (v > best) {
      best = v;
      best_theta = arg;
    }
  }
  return best_theta;
}

Domain domain_classify(const CyclicElement& e, double alpha) {
  if (!is_program_isometric(e)) throw DomainError("cyclic element is not isometric");
  return classify(covariant_params(e, alpha));
}

double lmr_distance(int n, double theta, double alpha) {
  require_copies(n);
  const std::vector<double> thetas(n, theta);
  return closed_form_rotation_distance(lmr_coeffs(thetas), alpha);
}

double lmr_improved_angle(int n, double alpha) {
  if (n <= 2) throw DomainError("the improved angle needs n > 2");
  return alpha / (n + alpha * std::sqrt(3.0) / 2.0);
}

double lmr_improvement(int n, double alpha) {
  const double improved = lmr_improved_angle(n, alpha);
  return lmr_distance(n, alpha / n, alpha) - lmr_distance(n, improved, alpha);
}

}  // namespace reflectron
