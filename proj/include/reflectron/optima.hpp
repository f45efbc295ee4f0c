#pragma once

#include <vector>

#include "reflectron/cyclic_algebra.hpp"
#include "reflectron/distances.hpp"

namespace reflectron {

// A point of the reflection-distance surface over r = |mean of c~_k, k >= 1|
// and u = arg(c~_0) - arg(that mean).
struct LandscapePoint {
  double r;
  double u;
  double value;
};

struct Landscape {
  int n;
  std::vector<LandscapePoint> points;    // row-major in r, then u
  std::vector<LandscapePoint> boundary;  // where the two maximizer regimes meet
};

double landscape_value(int n, double r, double u);

// r in [0,1] with grid_r points, u = 2 pi k / grid_u for k < grid_u.
Landscape landscape(int n, int grid_r = 513, int grid_u = 513);

// Critical line of the Domain B surface:
// arccos((n^3 (r^3 - 3r) - 12 n^2 r - 12 n r) / (2 (n+2)^3)).
double critical_u(int n, double r);

// argmin over theta in [0, pi] of the rotation distance of r_theta_coeffs.
double theta_star(int n, double alpha, double tol = 1e-10);

Domain domain_classify(const CyclicElement& e, double alpha);

// Distance of n equal sequential SWAP interactions at angle theta.
double lmr_distance(int n, double theta, double alpha);
double lmr_improved_angle(int n, double alpha);
double lmr_improvement(int n, double alpha);

}  // namespace reflectron
