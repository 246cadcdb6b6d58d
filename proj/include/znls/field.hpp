#pragma once

#include <complex>
#include <span>
#include <vector>

#include "znls/grid.hpp"

namespace znls {

// Zonal basis on S^3:  Z_k(theta) = k sin(k theta)/sin(theta), k >= 1, the
// zonal eigenfunction of L = 1 - Laplacian with eigenvalue k^2.
// ||Z_k||_{L^2(S^3)} = sqrt(2) pi k, so the orthonormal basis is
// Zhat_k = Z_k / (sqrt(2) pi k).
inline constexpr double kZonalNorm = std::numbers::sqrt2 * std::numbers::pi;  // ||Z_k|| / k

double zonal_eval(int k, double theta);

// Rotationally symmetric complex field, stored as coefficients
// coef[k-1] = <u, Zhat_k> for k = 1..truncation.
struct ZonalField {
  int truncation = 0;
  std::vector<std::complex<double>> coef;

  ZonalField() = default;
  explicit ZonalField(int K) : truncation(K), coef(K, {0.0, 0.0}) {}
};

ZonalField unit_mode(int k, int truncation);  // Zhat_k as a field

// Coefficients from grid samples via the type-I sine transform of
// v_j = u(theta_j) sin(theta_j); exact for trigonometric polynomials of
// degree < order in the v-variable.
ZonalField analyze(std::span<const std::complex<double>> values, const SphereGrid& grid,
                   int truncation);

// Grid samples u(theta_j) = sum_k coef_k Zhat_k(theta_j); inverse of analyze
// on bandlimited data.
std::vector<std::complex<double>> synthesize(const ZonalField& field, const SphereGrid& grid);

// series value at theta = 0 (or pi): sum_k c_k * (+-1)^{k+1} k / (sqrt2 pi)
std::complex<double> eval_at_pole(const ZonalField& field, bool south = false);

struct BandSpec {
  enum class Kind { mode, dyadic, lowpass };
  Kind kind;
  int index;

  static BandSpec single_mode(int k) { return {Kind::mode, k}; }
  static BandSpec dyadic(int n) { return {Kind::dyadic, n}; }
  static BandSpec lowpass(int n) { return {Kind::lowpass, n}; }
};

double band_weight(const BandSpec& band, int k);
ZonalField project(const ZonalField& field, const BandSpec& band);

// L = 1 - Laplacian, diagonal: c_k -> k^2 c_k
ZonalField apply_L(const ZonalField& field);

struct NormSpec {
  enum class Kind { lp, hs, linf };
  Kind kind;
  double param;

  static NormSpec Lp(double p) { return {Kind::lp, p}; }
  static NormSpec Hs(double s) { return {Kind::hs, s}; }
  static NormSpec Linf() { return {Kind::linf, 0.0}; }
};

// L^p via 4*pi sum w_j |u_j|^p on the given grid; H^s = sqrt(sum k^{2s}|c_k|^2)
// (the L-adapted Sobolev scale); L^inf on an 8x refined synthesis grid plus the
// two poles.
double norm(const ZonalField& field, const SphereGrid& grid, const NormSpec& spec);
double norm_l2(const ZonalField& field);  // Parseval shortcut

// log(4*pi * sum_j w_j |v_j|^p), computed in scaled form so that large p never
// overflows; -inf for the zero vector.
double log_lp_pow(std::span<const std::complex<double>> values, std::span<const double> weight,
                  double p);
double logsumexp(std::span<const double> logs);

// Quadrature evaluation of the spectral projector through its kernel,
//   [pi_k f](theta) = (1/pi) int_0^pi int_0^pi Z_k(gamma) f(t') sin^2 t' sin(psi) dpsi dt',
//   cos(gamma) = cos(theta)cos(t') + sin(theta)sin(t')cos(psi),
// with composite Simpson in psi and trapezoid in t', both of the same order.
// Independent route used as an oracle for project(., single_mode(k)).
class ProjectorKernelOracle {
 public:
  ProjectorKernelOracle(const SphereGrid& out_grid, int quad_order, int max_mode);

  std::vector<std::complex<double>> apply_values(const ZonalField& f, int k) const;
  ZonalField apply(const ZonalField& f, int k) const;

  int quad_order() const { return mq_; }

 private:
  SphereGrid grid_;
  int mq_;
  int kmax_;
  std::vector<double> kernel_;  // [k-1][node][quad-node]
};

ZonalField projector_kernel_oracle(const ZonalField& f, int k, int quad_order,
                                   const SphereGrid& grid);

// ---- space-time trajectories and the weak critical norm ----

struct TimeSeries {
  std::vector<double> time;
  std::vector<ZonalField> field;
};

inline constexpr double kZnormP0 = 4.0 + 1.0 / 10.0;
inline constexpr double kZnormP1 = 100.0;

// Z(I) = sum_{p in {p0,p1}} sup_{J subset I, |J|<=1}
//        (sum_N N^{5-p/2} ||P_N u||^p_{L^p_{x,t}(S^3 x J)})^{1/p}
// on the mesh of the series: spatial quadrature on the given grid, trapezoid in
// time, sup over mesh-aligned maximal windows of length <= 1.
double z_norm(const TimeSeries& traj, double t_lo, double t_hi, const SphereGrid& grid);

struct ZNormInfo {
  double value = 0.0;
  double tail_share = 0.0;  // largest (over p) share of bands N > K/2 in sum_N
};
ZNormInfo z_norm_info(const TimeSeries& traj, double t_lo, double t_hi, const SphereGrid& grid);

std::vector<int> dyadic_bands(int truncation);  // 1, 2, 4, ..., 2^ceil(lg K)

}  // namespace znls
