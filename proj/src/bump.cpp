#include "znls/bump.hpp"

#include <cmath>

namespace znls {

double bump(double x) {
  x = std::fabs(x);
  if (x <= 1.0) return 1.0;
  if (x >= 2.0) return 0.0;
  double s = (x - 1.0) * (x - 1.0);
  return std::exp(1.0 - 1.0 / (1.0 - s));
}

double bump_deriv(double x) {
  double ax = std::fabs(x);
  if (ax <= 1.0 || ax >= 2.0) return 0.0;
  double u = ax - 1.0;
  double d = 1.0 - u * u;
  double val = std::exp(1.0 - 1.0 / d);
  double dv = -2.0 * u / (d * d);  // d/dax of (1 - 1/d) is -(2u)/d^2
  double out = val * dv;
  return x < 0.0 ? -out : out;
}

double band_weight_dyadic(int k, int n) {
  double t = static_cast<double>(k) / static_cast<double>(n);
  return bump(t) - bump(2.0 * t);
}

double band_weight_lowpass(int k, int n) {
  return bump(static_cast<double>(k) / static_cast<double>(n));
}

}  // namespace znls
