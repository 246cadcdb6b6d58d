#include "znls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "znls/bump.hpp"
#include "znls/dst.hpp"
#include "znls/errors.hpp"
#include "znls/simd.hpp"

namespace znls {

namespace {

bool all_finite(std::span<const std::complex<double>> c) {
  for (const auto& z : c) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

std::vector<std::complex<double>> half_phases(int truncation, double dt) {
  std::vector<std::complex<double>> ph(truncation);
  for (int k = 1; k <= truncation; ++k) {
    double a = static_cast<double>(k) * k * dt / 2.0;
    ph[k - 1] = {std::cos(a), std::sin(a)};
  }
  return ph;
}

}  // namespace

void SolverConfig::validate() const {
  if (truncation < 1) throw PreconditionError("solver: truncation must be >= 1");
  if (grid_order < 3 * truncation) {
    throw PreconditionError("solver: grid order must be >= 3K, got M=" +
                            std::to_string(grid_order) + " for K=" + std::to_string(truncation));
  }
  if (!(dt > 0.0)) throw PreconditionError("solver: dt must be positive");
  double cap = 1.0 / (4.0 * static_cast<double>(truncation) * truncation);
  if (dt > cap * (1.0 + 1e-12)) {
    throw PreconditionError("solver: dt exceeds 1/(4K^2)");
  }
  if (rho < -1 || rho > 1) throw PreconditionError("solver: rho must be in {-1, 0, +1}");
  if (final_time == 0.0) throw PreconditionError("solver: final time must be nonzero");
  if (snapshot_stride < 1) throw PreconditionError("solver: snapshot stride must be >= 1");
}

ConservedPair conserved_quantities(const ZonalField& field, const SphereGrid& grid) {
  ConservedPair out;
  double grad = 0.0, lform = 0.0, mass = 0.0;
  for (int k = 1; k <= field.truncation; ++k) {
    double re = field.coef[k - 1].real(), im = field.coef[k - 1].imag();
    double m2 = re * re + im * im;
    double kk = static_cast<double>(k) * k;
    mass += m2;
    grad += (kk - 1.0) * m2;
    lform += kk * m2;
  }
  auto vals = synthesize(field, grid);
  double l6 =
      kZonalFactor * kern::weighted_abspow_sum_even(vals.data(), grid.weight.data(),
                                                    vals.size(), 6);
  out.mass = mass;
  out.energy = 0.5 * (grad + l6 / 3.0);
  out.energy_with_mass = 0.5 * (lform + l6 / 3.0);
  return out;
}

TimeSeries Trajectory::series() const {
  TimeSeries ts;
  ts.time = time;
  ts.field = snapshot;
  return ts;
}

std::vector<std::complex<double>> nonlinear_step(std::span<const std::complex<double>> values,
                                                 double dt, int rho) {
  std::vector<std::complex<double>> out(values.begin(), values.end());
  if (rho != 0) {
    kern::quintic_phase_inplace(out.data(), out.size(), -static_cast<double>(rho) * dt);
  }
  return out;
}

ZonalField strang_step(const ZonalField& field, double dt, const SolverConfig& config,
                       const SphereGrid& grid) {
  if (grid.order != config.grid_order) {
    throw PreconditionError("strang_step: grid does not match configuration");
  }
  ZonalField u = field;
  if (u.truncation != config.truncation) {
    u.coef.resize(config.truncation, {0.0, 0.0});
    u.truncation = config.truncation;
  }
  auto half = half_phases(config.truncation, dt);
  kern::cmul_inplace(u.coef.data(), half.data(), u.coef.size());
  auto vals = synthesize(u, grid);
  if (config.rho != 0) {
    kern::quintic_phase_inplace(vals.data(), vals.size(),
                                -static_cast<double>(config.rho) * dt);
  }
  u = analyze(vals, grid, config.truncation);
  kern::cmul_inplace(u.coef.data(), half.data(), u.coef.size());
  return u;
}

Trajectory solve_sphere(const ZonalField& u0, const SolverConfig& config,
                        const SphereGrid& grid) {
  config.validate();
  if (u0.truncation > config.truncation) {
    throw PreconditionError("solve_sphere: data truncation exceeds K");
  }
  if (grid.order != config.grid_order) {
    throw PreconditionError("solve_sphere: grid does not match configuration");
  }
  const double sign = config.final_time < 0.0 ? -1.0 : 1.0;
  const double dts = sign * config.dt;
  long long steps = std::llround(std::fabs(config.final_time) / config.dt);
  if (steps < 1) steps = 1;

  ZonalField u = u0;
  u.coef.resize(config.truncation, {0.0, 0.0});
  u.truncation = config.truncation;

  auto half = half_phases(config.truncation, dts);
  const double alpha = -static_cast<double>(config.rho) * dts;

  Trajectory traj;
  auto record = [&](double t) {
    traj.time.push_back(t);
    traj.snapshot.push_back(u);
    traj.conserved.push_back(conserved_quantities(u, grid));
  };
  record(0.0);

  for (long long s = 1; s <= steps; ++s) {
    kern::cmul_inplace(u.coef.data(), half.data(), u.coef.size());
    auto vals = synthesize(u, grid);
    if (config.rho != 0) kern::quintic_phase_inplace(vals.data(), vals.size(), alpha);
    u = analyze(vals, grid, config.truncation);
    kern::cmul_inplace(u.coef.data(), half.data(), u.coef.size());
    if (s % config.snapshot_stride == 0 || s == steps) {
      if (!all_finite(u.coef)) {
        traj.blown_up = true;
        traj.last_finite_time = traj.time.back();
        break;
      }
      record(static_cast<double>(s) * dts);
    }
  }
  if (!traj.blown_up) traj.last_finite_time = traj.time.back();
  return traj;
}

// ---- radial machinery ----

RadialField analyze_radial(std::span<const std::complex<double>> u_values,
                           const RadialGrid& grid, int truncation) {
  const int n = grid.node_count();
  if (static_cast<int>(u_values.size()) != n) {
    throw PreconditionError("analyze_radial: sample count does not match grid");
  }
  if (truncation < 1 || truncation > n) {
    throw PreconditionError("analyze_radial: bad truncation");
  }
  std::vector<std::complex<double>> w(n);
  for (int j = 0; j < n; ++j) w[j] = u_values[j] * grid.r[j];
  std::vector<std::complex<double>> s(n);
  dst_complex(grid.order, w.data(), s.data());
  RadialField f;
  f.truncation = truncation;
  f.coef.resize(truncation);
  for (int k = 1; k <= truncation; ++k) f.coef[k - 1] = s[k - 1] / static_cast<double>(grid.order);
  return f;
}

std::vector<std::complex<double>> synthesize_radial(const RadialField& field,
                                                    const RadialGrid& grid) {
  const int n = grid.node_count();
  if (field.truncation > n) {
    throw PreconditionError("synthesize_radial: truncation exceeds grid order - 1");
  }
  std::vector<std::complex<double>> a(n, {0.0, 0.0});
  for (int k = 1; k <= field.truncation; ++k) a[k - 1] = field.coef[k - 1] * 0.5;
  std::vector<std::complex<double>> w(n);
  dst_complex(grid.order, a.data(), w.data());
  for (int j = 0; j < n; ++j) w[j] /= grid.r[j];
  return w;
}

std::complex<double> eval_radial(const RadialField& field, double radius, double r) {
  if (r == 0.0) {
    std::complex<double> acc{0.0, 0.0};
    for (int k = 1; k <= field.truncation; ++k) {
      acc += field.coef[k - 1] * (static_cast<double>(k) * std::numbers::pi / radius);
    }
    return acc;
  }
  std::complex<double> acc{0.0, 0.0};
  for (int k = 1; k <= field.truncation; ++k) {
    acc += field.coef[k - 1] * std::sin(static_cast<double>(k) * std::numbers::pi * r / radius);
  }
  return acc / r;
}

double RadialSolverConfig::lambda(int k) const {
  if (op == RadialOperator::ball_dirichlet) return static_cast<double>(k) * k;
  double mu = static_cast<double>(k) * std::numbers::pi / radius;
  return mu * mu + 1.0;
}

void RadialSolverConfig::validate() const {
  if (truncation < 1) throw PreconditionError("radial solver: truncation must be >= 1");
  if (grid_order < 3 * truncation) throw PreconditionError("radial solver: grid order < 3K");
  if (!(radius > 0.0)) throw PreconditionError("radial solver: radius must be positive");
  if (op == RadialOperator::ball_dirichlet &&
      std::fabs(radius - std::numbers::pi) > 1e-12) {
    throw PreconditionError("radial solver: ball operator requires radius pi");
  }
  if (!(dt > 0.0)) throw PreconditionError("radial solver: dt must be positive");
  double cap = 1.0 / (4.0 * lambda(truncation));
  if (dt > cap * (1.0 + 1e-12)) {
    throw PreconditionError("radial solver: dt exceeds 1/(4 lambda_max)");
  }
  if (rho < -1 || rho > 1) throw PreconditionError("radial solver: rho must be in {-1,0,+1}");
  if (final_time == 0.0) throw PreconditionError("radial solver: final time must be nonzero");
  if (snapshot_stride < 1) throw PreconditionError("radial solver: snapshot stride >= 1");
}

ConservedPair conserved_radial(const RadialField& field, const RadialGrid& grid) {
  ConservedPair out;
  double mass = 0.0, grad = 0.0;
  for (int k = 1; k <= field.truncation; ++k) {
    double re = field.coef[k - 1].real(), im = field.coef[k - 1].imag();
    double m2 = re * re + im * im;
    double mu = static_cast<double>(k) * std::numbers::pi / grid.radius;
    mass += m2;
    grad += mu * mu * m2;
  }
  const double half_r = 2.0 * std::numbers::pi * grid.radius;  // 4*pi*(R/2)
  mass *= half_r;
  grad *= half_r;
  auto vals = synthesize_radial(field, grid);
  double l6 = 4.0 * std::numbers::pi *
              kern::weighted_abspow_sum_even(vals.data(), grid.weight.data(), vals.size(), 6);
  out.mass = mass;
  out.energy = 0.5 * (grad + l6 / 3.0);
  out.energy_with_mass = 0.5 * (grad + mass + l6 / 3.0);
  return out;
}

namespace {

RadialTrajectory solve_radial(const std::function<std::complex<double>(double)>& data,
                              const RadialSolverConfig& config) {
  config.validate();
  const RadialGrid grid = make_radial_grid(config.grid_order, config.radius);
  const int n = grid.node_count();
  std::vector<std::complex<double>> uvals(n);
  for (int j = 0; j < n; ++j) uvals[j] = data(grid.r[j]);
  RadialField f = analyze_radial(uvals, grid, config.truncation);

  const double sign = config.final_time < 0.0 ? -1.0 : 1.0;
  const double dts = sign * config.dt;
  long long steps = std::llround(std::fabs(config.final_time) / config.dt);
  if (steps < 1) steps = 1;

  std::vector<std::complex<double>> half(config.truncation);
  for (int k = 1; k <= config.truncation; ++k) {
    double a = config.lambda(k) * dts / 2.0;
    half[k - 1] = {std::cos(a), std::sin(a)};
  }
  const double alpha = -static_cast<double>(config.rho) * dts;

  RadialTrajectory traj;
  double total_mass0 = 0.0;
  auto record = [&](double t) {
    traj.time.push_back(t);
    traj.snapshot.push_back(f);
    traj.conserved.push_back(conserved_radial(f, grid));
    // boundary contamination: mass within 10% of the wall vs total
    auto vals = synthesize_radial(f, grid);
    double near = 0.0, total = 0.0;
    for (int j = 0; j < n; ++j) {
      double re = vals[j].real(), im = vals[j].imag();
      double m = grid.weight[j] * (re * re + im * im);
      total += m;
      if (grid.r[j] >= 0.9 * grid.radius) near += m;
    }
    if (traj.time.size() == 1) total_mass0 = total;
    if (total_mass0 > 0.0 && near > 1e-6 * total_mass0) traj.boundary_warning = true;
  };
  record(0.0);

  for (long long s = 1; s <= steps; ++s) {
    kern::cmul_inplace(f.coef.data(), half.data(), f.coef.size());
    auto vals = synthesize_radial(f, grid);
    if (config.rho != 0) kern::quintic_phase_inplace(vals.data(), vals.size(), alpha);
    f = analyze_radial(vals, grid, config.truncation);
    kern::cmul_inplace(f.coef.data(), half.data(), f.coef.size());
    if (s % config.snapshot_stride == 0 || s == steps) {
      if (!all_finite(f.coef)) {
        traj.blown_up = true;
        traj.last_finite_time = traj.time.back();
        break;
      }
      record(static_cast<double>(s) * dts);
    }
  }
  if (!traj.blown_up) traj.last_finite_time = traj.time.back();
  return traj;
}

}  // namespace

RadialTrajectory solve_euclidean_radial(const std::function<std::complex<double>(double)>& data,
                                        const RadialSolverConfig& config) {
  if (config.op != RadialOperator::euclidean_shifted) {
    throw PreconditionError("solve_euclidean_radial: wrong operator");
  }
  // data must decay inside R/2
  double inner_max = 0.0, outer_max = 0.0;
  for (int i = 0; i <= 64; ++i) {
    double r = config.radius * i / 64.0;
    double a = std::abs(data(std::max(r, 1e-12)));
    if (r <= 0.5 * config.radius) inner_max = std::max(inner_max, a);
    else outer_max = std::max(outer_max, a);
  }
  if (outer_max > 1e-9 * std::max(inner_max, 1e-300)) {
    throw PreconditionError("solve_euclidean_radial: data does not decay inside R/2");
  }
  return solve_radial(data, config);
}

RadialTrajectory solve_ball_radial(const std::function<std::complex<double>(double)>& data,
                                   const RadialSolverConfig& config) {
  if (config.op != RadialOperator::ball_dirichlet) {
    throw PreconditionError("solve_ball_radial: wrong operator");
  }
  double scale = std::abs(data(std::numbers::pi / 2.0)) + std::abs(data(std::numbers::pi / 3.0));
  if (std::abs(data(std::numbers::pi)) > 1e-9 * std::max(scale, 1e-300)) {
    throw PreconditionError("solve_ball_radial: nonvanishing Dirichlet trace at r = pi");
  }
  return solve_radial(data, config);
}

// ---- conjugation ----

ZonalField ball_lift(const std::function<std::complex<double>(double)>& phi_ball,
                     const SphereGrid& grid, int truncation) {
  double scale =
      std::abs(phi_ball(std::numbers::pi / 2.0)) + std::abs(phi_ball(std::numbers::pi / 3.0));
  if (std::abs(phi_ball(std::numbers::pi)) > 1e-9 * std::max(scale, 1e-300)) {
    throw PreconditionError("ball_lift: nonvanishing Dirichlet trace at r = pi");
  }
  const int n = grid.node_count();
  std::vector<std::complex<double>> vals(n);
  for (int j = 0; j < n; ++j) {
    // division by g = sin(theta)/theta
    vals[j] = phi_ball(grid.theta[j]) * (grid.theta[j] / grid.sin_theta[j]);
  }
  return analyze(vals, grid, truncation);
}

std::vector<std::complex<double>> ball_push(const ZonalField& field, const SphereGrid& grid) {
  auto vals = synthesize(field, grid);
  for (int j = 0; j < grid.node_count(); ++j) {
    vals[j] *= grid.sin_theta[j] / grid.theta[j];
  }
  return vals;
}

double verify_ball_flow(std::span<const std::complex<double>> dirichlet_coef, double t,
                        const SphereGrid& grid) {
  const int kd = static_cast<int>(dirichlet_coef.size());
  if (kd < 1 || kd > grid.node_count()) {
    throw PreconditionError("verify_ball_flow: bad mode count");
  }
  const RadialGrid rgrid = make_radial_grid(grid.order, std::numbers::pi);

  // left: Dirichlet eigenbasis with phases e^{i k^2 t}
  RadialField lf;
  lf.truncation = kd;
  lf.coef.resize(kd);
  for (int k = 1; k <= kd; ++k) {
    double a = static_cast<double>(k) * k * t;
    lf.coef[k - 1] = dirichlet_coef[k - 1] * std::complex<double>{std::cos(a), std::sin(a)};
  }
  auto left = synthesize_radial(lf, rgrid);

  // right: lift, evolve, push
  RadialField f0;
  f0.truncation = kd;
  f0.coef.assign(dirichlet_coef.begin(), dirichlet_coef.end());
  auto phi_vals = synthesize_radial(f0, rgrid);
  std::vector<std::complex<double>> lifted(grid.node_count());
  for (int j = 0; j < grid.node_count(); ++j) {
    lifted[j] = phi_vals[j] * (grid.theta[j] / grid.sin_theta[j]);
  }
  ZonalField u = analyze(lifted, grid, kd);
  u = evolve_linear(u, t);
  auto right = ball_push(u, grid);

  double acc = 0.0;
  for (int j = 0; j < grid.node_count(); ++j) {
    double re = left[j].real() - right[j].real();
    double im = left[j].imag() - right[j].imag();
    acc += rgrid.weight[j] * (re * re + im * im);
  }
  return std::sqrt(4.0 * std::numbers::pi * acc);
}

// ---- profile comparison ----

TimeSeries build_rescaled_comparison(const RadialTrajectory& euclid, double euclid_radius,
                                     double truncation_radius, int concentration,
                                     const SphereGrid& grid, int truncation) {
  if (concentration < 10.0 * truncation_radius) {
    throw PreconditionError("build_rescaled_comparison: need N >= 10 R");
  }
  if (grid.order < 16 * concentration) {
    throw PreconditionError("build_rescaled_comparison: grid does not resolve scale N");
  }
  const double n = concentration;
  const double amp = std::sqrt(n);
  TimeSeries out;
  std::vector<std::complex<double>> vals(grid.node_count());
  for (std::size_t i = 0; i < euclid.time.size(); ++i) {
    std::fill(vals.begin(), vals.end(), std::complex<double>{0.0, 0.0});
    for (int j = 0; j < grid.node_count(); ++j) {
      double r = n * grid.theta[j];
      if (r >= 2.0 * truncation_radius) break;
      double cut = bump(r / truncation_radius);
      if (cut == 0.0) continue;
      vals[j] = amp * cut * eval_radial(euclid.snapshot[i], euclid_radius, r);
    }
    out.time.push_back(euclid.time[i] / (n * n));
    out.field.push_back(analyze(vals, grid, truncation));
  }
  return out;
}

RadialSolverConfig euclid_config_for(const ProfileCompareParams& params) {
  RadialSolverConfig rc;
  rc.truncation = params.euclid_truncation;
  rc.grid_order = smooth_grid_order(3 * rc.truncation + 1);
  rc.rho = params.rho;
  rc.op = RadialOperator::euclidean_shifted;
  rc.radius = params.domain_radius;
  double cap = 1.0 / (4.0 * rc.lambda(rc.truncation));
  long long steps = static_cast<long long>(std::ceil(params.window / cap));
  long long chunk = params.snapshots;
  steps = ((steps + chunk - 1) / chunk) * chunk;
  rc.dt = params.window / static_cast<double>(steps);
  rc.snapshot_stride = static_cast<int>(steps / chunk);
  rc.final_time = params.window;
  return rc;
}

ProfileComparison compare_profile_evolution(const ProfileSpec& profile,
                                            const ProfileCompareParams& params,
                                            const RadialTrajectory* euclid_forward,
                                            const RadialTrajectory* euclid_backward) {
  if (params.domain_radius < 4.0 * params.truncation_radius) {
    throw PreconditionError("compare_profile_evolution: domain must be >= 4R");
  }
  const int n = params.concentration;

  // Euclidean oracle (tau in [-T0, T0]), shared across N when passed in
  RadialSolverConfig rc = euclid_config_for(params);
  RadialTrajectory fwd_local, bwd_local;
  const RadialTrajectory* fwd = euclid_forward;
  const RadialTrajectory* bwd = euclid_backward;
  if (fwd == nullptr || bwd == nullptr) {
    auto data = [&](double r) { return std::complex<double>{profile.phi(r), 0.0}; };
    fwd_local = solve_euclidean_radial(data, rc);
    rc.final_time = -params.window;
    bwd_local = solve_euclidean_radial(data, rc);
    rc.final_time = params.window;
    fwd = &fwd_local;
    bwd = &bwd_local;
  }

  // sphere run
  const int m = smooth_grid_order(params.sphere_grid_factor * n + 1);
  const SphereGrid grid = make_grid(m);
  SolverConfig sc;
  sc.truncation = m / 3;
  sc.grid_order = m;
  sc.rho = params.rho;
  const double window_t = params.window / (static_cast<double>(n) * n);
  double cap = 1.0 / (4.0 * static_cast<double>(sc.truncation) * sc.truncation);
  long long steps = static_cast<long long>(std::ceil(window_t / cap));
  steps = ((steps + params.snapshots - 1) / params.snapshots) * params.snapshots;
  sc.dt = window_t / static_cast<double>(steps);
  sc.snapshot_stride = static_cast<int>(steps / params.snapshots);
  sc.final_time = window_t;

  ProfileSpec local = profile;
  local.concentration = n;
  ZonalField u0 = make_profile(local, grid);

  Trajectory sphere_fwd = solve_sphere(u0, sc, grid);
  sc.final_time = -window_t;
  Trajectory sphere_bwd = solve_sphere(u0, sc, grid);

  TimeSeries v_fwd = build_rescaled_comparison(*fwd, params.domain_radius,
                                               params.truncation_radius, n, grid, sc.truncation);
  TimeSeries v_bwd = build_rescaled_comparison(*bwd, params.domain_radius,
                                               params.truncation_radius, n, grid, sc.truncation);

  ProfileComparison out;
  out.boundary_warning = fwd->boundary_warning || bwd->boundary_warning;
  auto compare_dir = [&](const Trajectory& u, const TimeSeries& v, bool skip_zero) {
    std::size_t count = std::min(u.snapshot.size(), v.field.size());
    for (std::size_t i = skip_zero ? 1 : 0; i < count; ++i) {
      double d2 = 0.0, v2 = 0.0;
      const ZonalField& a = u.snapshot[i];
      const ZonalField& b = v.field[i];
      for (int k = 1; k <= sc.truncation; ++k) {
        double kk = static_cast<double>(k) * k;
        std::complex<double> da = a.coef[k - 1] - b.coef[k - 1];
        d2 += kk * std::norm(da);
        v2 += kk * std::norm(b.coef[k - 1]);
      }
      ProfileComparison::Row row;
      row.t = u.time[i];
      row.discrepancy_h1 = std::sqrt(d2);
      row.vrn_h1 = std::sqrt(v2);
      out.rows.push_back(row);
      out.sup_discrepancy = std::max(out.sup_discrepancy, row.discrepancy_h1);
      out.sup_vrn_h1 = std::max(out.sup_vrn_h1, row.vrn_h1);
    }
  };
  compare_dir(sphere_bwd, v_bwd, true);
  std::reverse(out.rows.begin(), out.rows.end());
  compare_dir(sphere_fwd, v_fwd, false);

  // linear-regime scattering window: for rho = 0 the solver path must stay on
  // e^{itL} u0 through [T0 N^-2, 1/T0]
  if (params.rho == 0 && 1.0 / params.window > window_t) {
    out.has_linear_window = true;
    SolverConfig lc = sc;
    lc.final_time = 1.0 / params.window;
    long long lsteps = static_cast<long long>(std::ceil(lc.final_time / cap));
    lsteps = ((lsteps + 7) / 8) * 8;
    lc.dt = lc.final_time / static_cast<double>(lsteps);
    lc.snapshot_stride = static_cast<int>(lsteps / 8);
    Trajectory lin = solve_sphere(u0, lc, grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < lin.snapshot.size(); ++i) {
      if (lin.time[i] < window_t) continue;
      ZonalField ref = evolve_linear(u0, lin.time[i]);
      double d2 = 0.0;
      for (int k = 1; k <= sc.truncation; ++k) {
        double kk = static_cast<double>(k) * k;
        d2 += kk * std::norm(lin.snapshot[i].coef[k - 1] - ref.coef[k - 1]);
      }
      worst = std::max(worst, std::sqrt(d2));
    }
    out.linear_window_discrepancy = worst;
  }
  return out;
}

}  // namespace znls
