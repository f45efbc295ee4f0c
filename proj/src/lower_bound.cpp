#include <cmath>

#include "reflectron/errors.hpp"
#include "reflectron/repthy.hpp"

namespace reflectron {

double log_binomial(double m, double k) {
  if (!(k >= 0.0 && m >= k)) throw DomainError("log_binomial needs m >= k >= 0");
  return std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0);
}

double lower_bound_fd(double epsilon, double n, int d) {
  if (d < 2) throw DomainError("d must be at least 2");
  if (!(epsilon >= 0.0) || !(n >= 0.0)) throw DomainError("epsilon and n must be nonnegative");
  const double penalty = 4.0 * n * std::sqrt(2.0 * epsilon);
  if (d == 2) return log_binomial(n + 2.0, 2.0) - penalty * log_binomial(n + 3.0, 3.0) - std::log(2.0);
  const double dd = d;
  return 2.0 * log_binomial(n + dd - 1.0, dd - 1.0) -
         penalty * log_binomial(n + dd * dd - 1.0, dd * dd - 1.0) - std::log(2.0);
}

double n_of_eps(double epsilon, int d) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (d < 2) throw DomainError("d must be at least 2");
  const double dp1 = d + 1.0;
  return std::exp(lambert_w0(std::sqrt(1.0 / (8.0 * dp1 * dp1 * epsilon))));
}

double final_bound_expression(double epsilon, int d, double delta) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (d == 2) return (1.0 - delta) * std::log(1.0 / epsilon);
  const double s = static_cast<double>(d) * d - 1.0;
  return (1.0 - delta) * (d - 1.0) * std::log(1.0 / (8.0 * s * s * epsilon));
}

FinalBound final_bound(double epsilon, int d) {
  FinalBound out;
  out.n_star = n_of_eps(epsilon, d);
  out.f_d = lower_bound_fd(epsilon, out.n_star, d);
  out.leading = final_bound_expression(epsilon, d, 0.0);
  out.delta = 1.0 - out.f_d / out.leading;
  out.asymptotic = epsilon <= 1e-3 / ((d + 1.0) * (d + 1.0));
  return out;
}

}  // namespace reflectron
