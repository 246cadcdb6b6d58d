#pragma once

namespace znls {

// Smooth even cutoff: 1 on |x| <= 1, 0 on |x| >= 2, and
// exp(1 - 1/(1 - (|x|-1)^2)) in between.  Monotone nonincreasing on [1, 2].
double bump(double x);
double bump_deriv(double x);

struct BumpFunction {
  double operator()(double x) const { return bump(x); }
  double deriv(double x) const { return bump_deriv(x); }
};

// Littlewood-Paley weights built from the cutoff.
// dyadic band n:  eta(k/n) - eta(2k/n)     (n a power of two)
// lowpass n:      eta(k/n)
double band_weight_dyadic(int k, int n);
double band_weight_lowpass(int k, int n);

}  // namespace znls
