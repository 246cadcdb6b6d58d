#pragma once

#include <functional>
#include <span>

#include "znls/field.hpp"
#include "znls/flow.hpp"
#include "znls/grid.hpp"

namespace znls {

// Quintic NLS on S^3 (zonal sector) in the convention (i d/dt + L) u = rho |u|^4 u.
// rho = -1 is the branch conserving mass and E(u) = 1/2 int |grad u|^2 + (1/3)|u|^6.
struct SolverConfig {
  int truncation = 0;     // K
  int grid_order = 0;     // M >= 3K (dealiasing headroom)
  double dt = 0.0;        // <= 1/(4 K^2)
  int rho = -1;           // in {-1, 0, +1}
  double final_time = 0;  // may be negative (backward run)
  int snapshot_stride = 1;

  void validate() const;
};

struct ConservedPair {
  double mass = 0.0;
  double energy = 0.0;            // 1/2 [ sum (k^2-1)|c_k|^2 + (1/3) int |u|^6 ]
  double energy_with_mass = 0.0;  // gradient term replaced by <L u, u>
};

ConservedPair conserved_quantities(const ZonalField& field, const SphereGrid& grid);

struct Trajectory {
  std::vector<double> time;
  std::vector<ZonalField> snapshot;
  std::vector<ConservedPair> conserved;
  bool blown_up = false;
  double last_finite_time = 0.0;

  TimeSeries series() const;
};

// exact pointwise sub-flow of i u_t = rho |u|^4 u: u -> e^{-i rho |u|^4 dt} u
std::vector<std::complex<double>> nonlinear_step(std::span<const std::complex<double>> values,
                                                 double dt, int rho);

// half linear phase, full nonlinear phase on the padded grid with re-projection
// to K modes, half linear phase; second order in dt
ZonalField strang_step(const ZonalField& field, double dt, const SolverConfig& config,
                       const SphereGrid& grid);

Trajectory solve_sphere(const ZonalField& u0, const SolverConfig& config,
                        const SphereGrid& grid);

// ---- radial solvers on [0, R] via w = r u sine series ----

struct RadialField {
  int truncation = 0;
  std::vector<std::complex<double>> coef;  // w(r) = sum_k coef_k sin(k pi r / R)
};

RadialField analyze_radial(std::span<const std::complex<double>> u_values,
                           const RadialGrid& grid, int truncation);
std::vector<std::complex<double>> synthesize_radial(const RadialField& field,
                                                    const RadialGrid& grid);
std::complex<double> eval_radial(const RadialField& field, double radius, double r);

enum class RadialOperator {
  euclidean_shifted,  // 1 - Laplacian on R^3: lambda_k = (k pi / R)^2 + 1
  ball_dirichlet,     // -Laplacian on B(0, pi): lambda_k = k^2 (requires R = pi)
};

struct RadialSolverConfig {
  int truncation = 0;
  int grid_order = 0;  // >= 3K
  double dt = 0.0;
  int rho = -1;
  double final_time = 0.0;
  int snapshot_stride = 1;
  RadialOperator op = RadialOperator::euclidean_shifted;
  double radius = 0.0;

  double lambda(int k) const;
  void validate() const;
};

ConservedPair conserved_radial(const RadialField& field, const RadialGrid& grid);

struct RadialTrajectory {
  std::vector<double> time;
  std::vector<RadialField> snapshot;
  std::vector<ConservedPair> conserved;
  bool blown_up = false;
  bool boundary_warning = false;  // mass within 10% of the wall exceeded 1e-6 of total
  double last_finite_time = 0.0;
};

// (i d/dt - Laplacian + 1) v = rho v |v|^4 on radial R^3, truncated to [0, R]
// with a vanishing outer condition; data must decay inside R/2.
RadialTrajectory solve_euclidean_radial(const std::function<std::complex<double>(double)>& data,
                                        const RadialSolverConfig& config);

// radial quintic NLS on B(0, pi), Dirichlet condition
RadialTrajectory solve_ball_radial(const std::function<std::complex<double>(double)>& data,
                                   const RadialSolverConfig& config);

// ---- ball conjugation: e^{-it Dirichlet-Laplacian} phi = g e^{itL}(phi/g), g = sin(theta)/theta

ZonalField ball_lift(const std::function<std::complex<double>(double)>& phi_ball,
                     const SphereGrid& grid, int truncation);
std::vector<std::complex<double>> ball_push(const ZonalField& field, const SphereGrid& grid);

// L^2(B) distance between the Dirichlet eigenbasis evolution and the
// lift/evolve/push route, for data sum_k d_k sin(k r)/r
double verify_ball_flow(std::span<const std::complex<double>> dirichlet_coef, double t,
                        const SphereGrid& grid);

// ---- Euclidean profile comparison ----

// V_{R,N}(theta, tau/N^2) = N^{1/2} eta(N theta / R) v(N theta, tau) pulled back
// to the sphere grid at the trajectory snapshot times.
TimeSeries build_rescaled_comparison(const RadialTrajectory& euclid, double euclid_radius,
                                     double truncation_radius, int concentration,
                                     const SphereGrid& grid, int truncation);

struct ProfileCompareParams {
  int concentration = 64;         // N
  double truncation_radius = 4;   // R in eta(|x|/R)
  double domain_radius = 80.0;    // Euclidean domain, >= 4R
  double window = 4.0;            // T0: compare on |t| <= T0 N^-2
  int rho = -1;
  int euclid_truncation = 960;
  int sphere_grid_factor = 16;    // sphere grid order >= factor * N
  int snapshots = 16;             // per time direction
};

struct ProfileComparison {
  struct Row {
    double t = 0.0;
    double discrepancy_h1 = 0.0;
    double vrn_h1 = 0.0;
  };
  std::vector<Row> rows;
  double sup_discrepancy = 0.0;
  double sup_vrn_h1 = 0.0;
  bool has_linear_window = false;
  double linear_window_discrepancy = 0.0;
  bool boundary_warning = false;
};

// Euclidean trajectories may be shared across N; pass nullptr to solve inside.
ProfileComparison compare_profile_evolution(const ProfileSpec& profile,
                                            const ProfileCompareParams& params,
                                            const RadialTrajectory* euclid_forward = nullptr,
                                            const RadialTrajectory* euclid_backward = nullptr);

RadialSolverConfig euclid_config_for(const ProfileCompareParams& params);

}  // namespace znls
