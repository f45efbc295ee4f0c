#include <cmath>
#include <limits>
#include <numbers>

#include "reflectron/errors.hpp"
#include "reflectron/repthy.hpp"

namespace reflectron {

double lambert_w0(double x) {
  const double branch = -1.0 / std::numbers::e;
  if (!(x >= branch)) throw DomainError("lambert_w0 needs x >= -1/e");
  if (x == 0.0) return 0.0;
  if (x == branch) return -1.0;
  double w;
  if (x < 1.0) {
    // Series around the branch point keeps Halley stable near -1/e.
    const double p = std::sqrt(2.0 * (std::numbers::e * x + 1.0));
    w = -1.0 + p - p * p / 3.0;
  } else {
    const double l = std::log(x);
    w = l - (l > 1.0 ? std::log(l) : 0.0);
  }
  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) break;
  }
  return w;
}

}  // namespace reflectron
