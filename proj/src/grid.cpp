#include "znls/grid.hpp"

#include <cmath>
#include <string>

#include "znls/errors.hpp"

namespace znls {

SphereGrid make_grid(int order) {
  if (order < 4) {
    throw PreconditionError("make_grid: order must be >= 4, got " + std::to_string(order));
  }
  SphereGrid g;
  g.order = order;
  const int n = order - 1;
  g.theta.resize(n);
  g.sin_theta.resize(n);
  g.weight.resize(n);
  const double h = std::numbers::pi / order;
  for (int j = 1; j <= n; ++j) {
    double th = h * j;
    g.theta[j - 1] = th;
    double s = std::sin(th);
    g.sin_theta[j - 1] = s;
    g.weight[j - 1] = h * s * s;
  }
  return g;
}

RadialGrid make_radial_grid(int order, double radius) {
  if (order < 4 || !(radius > 0.0)) {
    throw PreconditionError("make_radial_grid: need order >= 4 and radius > 0");
  }
  RadialGrid g;
  g.order = order;
  g.radius = radius;
  const int n = order - 1;
  g.r.resize(n);
  g.weight.resize(n);
  const double h = radius / order;
  for (int j = 1; j <= n; ++j) {
    double r = h * j;
    g.r[j - 1] = r;
    g.weight[j - 1] = h * r * r;
  }
  return g;
}

int smooth_grid_order(int minimum) {
  if (minimum < 4) minimum = 4;
  for (int m = minimum;; ++m) {
    int v = m - 1;
    for (int f : {2, 3, 5}) {
      while (v % f == 0) v /= f;
    }
    if (v == 1) return m;
  }
}

}  // namespace znls
