#pragma once

#include <numbers>
#include <vector>

namespace znls {

// S^3 volume and the factor turning zonal theta-integrals into S^3 integrals:
//   int_{S^3} f = 4*pi * int_0^pi f(theta) sin^2(theta) dtheta   (f zonal)
inline constexpr double kSphereVolume = 2.0 * std::numbers::pi * std::numbers::pi;
inline constexpr double kZonalFactor = 4.0 * std::numbers::pi;

// Interior theta-nodes of the type-I sine grid with trapezoid weights for the
// measure sin^2(theta) dtheta.  Endpoints are excluded (the measure vanishes
// there); sum(weight) = pi/2 exactly for any order >= 4.
struct SphereGrid {
  int order = 0;                 // M: theta_j = j*pi/M, j = 1..M-1
  std::vector<double> theta;
  std::vector<double> sin_theta;
  std::vector<double> weight;    // (pi/M) * sin^2(theta_j)
  int node_count() const { return order - 1; }
};

SphereGrid make_grid(int order);  // order >= 4 or PreconditionError

// Radial grid on [0, radius] with weights for int f(r) r^2 dr, same node layout.
struct RadialGrid {
  int order = 0;                 // M: r_j = j*radius/M, j = 1..M-1
  double radius = 0.0;
  std::vector<double> r;
  std::vector<double> weight;    // (radius/M) * r_j^2
  int node_count() const { return order - 1; }
};

RadialGrid make_radial_grid(int order, double radius);

// Smallest m >= minimum such that m-1 factors into 2^a 3^b 5^c; keeps the
// length-(m-1) sine transforms on fast FFT sizes.
int smooth_grid_order(int minimum);

}  // namespace znls
