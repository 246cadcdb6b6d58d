#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "znls/field.hpp"

namespace znls {

// e^{itL}: c_k -> e^{i k^2 t} c_k; unitary, 2pi-periodic in t
ZonalField evolve_linear(const ZonalField& field, double t);

// Concentrating profile T_N phi, zonal frame at the north pole:
//   f_N(theta) = N^{1/2} eta(N^{1/2} theta) phi(N theta),
// time-shifted by e^{-i t0 L} when t0 != 0.
struct ProfileSpec {
  std::function<double(double)> phi;   // radial Euclidean profile, r >= 0
  double concentration = 1.0;          // N >= 1
  double time_shift = 0.0;             // t0
  double bandwidth = 1.0;              // resolution hint for the grid check
};

ZonalField make_profile(const ProfileSpec& spec, const SphereGrid& grid);

// reference compactly supported bump, phi(0) = 1, support [0, 1]
double reference_profile(double r);

struct FramePairings {
  std::complex<double> l2;   // <f, g>_{L^2(S^3)} by quadrature
  std::complex<double> h1;   // sum k^2 c_f conj(c_g)
  double l3_cubes;           // <|f|^3, |g|^3>_{L^2} by quadrature
};

FramePairings frame_inner_products(const ZonalField& f, const ZonalField& g,
                                   const SphereGrid& grid);

// sup over dyadic M and mesh times t in [T N^-2, T^-1] of
//   M^{-1/2} ||P_M e^{itL} f||_{L^inf}  (refined-grid sup)
double extinction_scan(const ZonalField& f, double concentration, double T,
                       const SphereGrid& grid, int mesh_count);
double extinction_scan(const ProfileSpec& spec, double T, const SphereGrid& grid,
                       int mesh_count);

struct EstimateReport {
  std::vector<double> axis;
  std::vector<double> measured;
  std::vector<double> reference;
  double slope = 0.0;
  double residual = 0.0;
};

// least-squares slope of log(measured) against log(axis)
void fit_loglog(EstimateReport& report);

// sampling rule for L^p_{x,t} quadrature: at least 32 samples per period
// 2 pi / gap, gap = largest adjacent spacing of squared frequencies <= kmax
int time_sample_count(int kmax, double interval_len);

// ||e^{itL} u0||_{L^p_{x,t}(S^3 x [t0,t1])}: trapezoid in t, spatial quadrature
// on the given grid
double space_time_lp(const ZonalField& u0, double p, double t0, double t1, int nt,
                     const SphereGrid& grid);

// seeded complex-gaussian coefficients on (band/2, 2 band], P_band applied
ZonalField gaussian_band_field(std::uint64_t seed, int band);

// max over the ensemble of ||P_N e^{itL} f||_{L^p_{x,t}} / ||P_N f||_{L^2}
// per dyadic N; reference N^{3/2 - 5/p}
EstimateReport strichartz_scan(std::uint64_t seed, std::span<const int> bands, double p,
                               double t0, double t1, int ensemble);

// ||1_{theta <= 1/N} Zhat_q||_{L^2} / ||Zhat_q||_{L^2} by quadrature
double concentration_ratio(int q, int ball_scale);

// |<Zhat_p, 1_{theta <= 2/N} Zhat_q>| by quadrature
double hflfi_kernel_entry(int p, int q, int ball_scale);

// max over ensemble of ||u1 u2 u3||_{L^2_{x,t}} / (N2 N3 prod ||f_i||_{L^2})
// for u_i = e^{itL} P_{N_i} f_i, swept over n1; reference (N3/N1 + 1/N2)
EstimateReport trilinear_scan(std::span<const int> n1_axis, int n2, int n3,
                              std::uint64_t seed, double t0, double t1, int ensemble);

}  // namespace znls
