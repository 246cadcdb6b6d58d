#include "znls/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "znls/bump.hpp"
#include "znls/errors.hpp"
#include "znls/rng.hpp"
#include "znls/simd.hpp"

namespace znls {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::complex<double>> phase_table(int truncation, double t) {
  std::vector<std::complex<double>> ph(truncation);
  for (int k = 1; k <= truncation; ++k) {
    double a = t * static_cast<double>(k) * static_cast<double>(k);
    ph[k - 1] = {std::cos(a), std::sin(a)};
  }
  return ph;
}

// composite Simpson of f on [0, len] with an even panel count
template <class F>
double simpson(F&& f, double len, int panels) {
  if (panels % 2 != 0) ++panels;
  double h = len / panels;
  double acc = f(0.0) + f(len);
  for (int i = 1; i < panels; ++i) acc += f(h * i) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

ZonalField evolve_linear(const ZonalField& field, double t) {
  ZonalField out = field;
  auto ph = phase_table(field.truncation, t);
  kern::cmul_inplace(out.coef.data(), ph.data(), out.coef.size());
  return out;
}

double reference_profile(double r) { return bump(2.0 * r); }

ZonalField make_profile(const ProfileSpec& spec, const SphereGrid& grid) {
  if (spec.concentration < 1.0) {
    throw PreconditionError("make_profile: concentration scale must be >= 1");
  }
  double need = 16.0 * spec.concentration * std::max(1.0, spec.bandwidth);
  if (grid.order < need) {
    throw PreconditionError("make_profile: grid order " + std::to_string(grid.order) +
                            " does not resolve scale (need >= " +
                            std::to_string(static_cast<long long>(need)) + ")");
  }
  const double n = spec.concentration;
  const double amp = std::sqrt(n);
  const int nodes = grid.node_count();
  std::vector<std::complex<double>> vals(nodes, {0.0, 0.0});
  for (int j = 0; j < nodes; ++j) {
    double th = grid.theta[j];
    double cut = bump(std::sqrt(n) * th);
    if (cut == 0.0) continue;
    vals[j] = amp * cut * spec.phi(n * th);
  }
  ZonalField f = analyze(vals, grid, grid.order - 1);
  if (spec.time_shift != 0.0) f = evolve_linear(f, -spec.time_shift);
  return f;
}

FramePairings frame_inner_products(const ZonalField& f, const ZonalField& g,
                                   const SphereGrid& grid) {
  if (f.truncation > grid.node_count() || g.truncation > grid.node_count()) {
    throw PreconditionError("frame_inner_products: grid mismatch");
  }
  auto fv = synthesize(f, grid);
  auto gv = synthesize(g, grid);
  FramePairings out{};
  std::complex<double> l2{0.0, 0.0};
  double l3 = 0.0;
  for (int j = 0; j < grid.node_count(); ++j) {
    l2 += grid.weight[j] * fv[j] * std::conj(gv[j]);
    double af = std::abs(fv[j]), ag = std::abs(gv[j]);
    l3 += grid.weight[j] * af * af * af * ag * ag * ag;
  }
  out.l2 = l2 * kZonalFactor;
  out.l3_cubes = l3 * kZonalFactor;
  std::complex<double> h1{0.0, 0.0};
  int kmax = std::min(f.truncation, g.truncation);
  for (int k = 1; k <= kmax; ++k) {
    h1 += static_cast<double>(k) * k * f.coef[k - 1] * std::conj(g.coef[k - 1]);
  }
  out.h1 = h1;
  return out;
}

double extinction_scan(const ZonalField& f, double concentration, double T,
                       const SphereGrid& grid, int mesh_count) {
  if (T < 2.0 || T >= concentration) {
    throw PreconditionError("extinction_scan: need 2 <= T < N for a nonempty window");
  }
  if (mesh_count < 2) throw PreconditionError("extinction_scan: mesh too small");
  const double t_lo = T / (concentration * concentration);
  const double t_hi = 1.0 / T;
  const auto bands = dyadic_bands(f.truncation);
  const SphereGrid fine = make_grid(smooth_grid_order(8 * grid.order));
  double worst = 0.0;
  for (int it = 0; it < mesh_count; ++it) {
    double t = t_lo + (t_hi - t_lo) * it / (mesh_count - 1);
    ZonalField ut = evolve_linear(f, t);
    for (int band : bands) {
      ZonalField pu = project(ut, BandSpec::dyadic(band));
      bool zero = true;
      for (const auto& c : pu.coef) {
        if (c != std::complex<double>{0.0, 0.0}) {
          zero = false;
          break;
        }
      }
      if (zero) continue;
      auto vals = synthesize(pu, fine);
      double mx = 0.0;
      for (const auto& v : vals) mx = std::max(mx, std::abs(v));
      mx = std::max(mx, std::abs(eval_at_pole(pu, false)));
      mx = std::max(mx, std::abs(eval_at_pole(pu, true)));
      worst = std::max(worst, mx / std::sqrt(static_cast<double>(band)));
    }
  }
  return worst;
}

double extinction_scan(const ProfileSpec& spec, double T, const SphereGrid& grid,
                       int mesh_count) {
  ZonalField f = make_profile(spec, grid);
  return extinction_scan(f, spec.concentration, T, grid, mesh_count);
}

void fit_loglog(EstimateReport& report) {
  const std::size_t n = report.axis.size();
  if (n < 2) {
    report.slope = 0.0;
    report.residual = 0.0;
    return;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::log(report.axis[i]);
    double y = std::log(report.measured[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = n * sxx - sx * sx;
  report.slope = (n * sxy - sx * sy) / denom;
  double intercept = (sy - report.slope * sx) / n;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::log(report.axis[i]);
    double y = std::log(report.measured[i]);
    double e = y - (report.slope * x + intercept);
    rss += e * e;
  }
  report.residual = std::sqrt(rss / n);
}

int time_sample_count(int kmax, double interval_len) {
  double gap = 2.0 * kmax - 1.0;
  double dt = 2.0 * std::numbers::pi / (32.0 * gap);
  int count = static_cast<int>(std::ceil(interval_len / dt)) + 1;
  return std::max(count, 33);
}

double space_time_lp(const ZonalField& u0, double p, double t0, double t1, int nt,
                     const SphereGrid& grid) {
  if (nt < 2) throw PreconditionError("space_time_lp: need at least two time samples");
  const double h = (t1 - t0) / (nt - 1);
  std::vector<double> logs(nt, -kInf);
  for (int i = 0; i < nt; ++i) {
    double t = t0 + h * i;
    ZonalField ut = evolve_linear(u0, t);
    auto vals = synthesize(ut, grid);
    double lw = std::log(i == 0 || i == nt - 1 ? h / 2.0 : h);
    logs[i] = log_lp_pow(vals, grid.weight, p) + lw;
  }
  double lse = logsumexp(logs);
  return lse == -kInf ? 0.0 : std::exp(lse / p);
}

ZonalField gaussian_band_field(std::uint64_t seed, int band) {
  Rng rng(seed);
  ZonalField f(2 * band);
  for (int k = band / 2 + 1; k <= 2 * band; ++k) f.coef[k - 1] = rng.complex_gaussian();
  return project(f, BandSpec::dyadic(band));
}

EstimateReport strichartz_scan(std::uint64_t seed, std::span<const int> bands, double p,
                               double t0, double t1, int ensemble) {
  if (p <= 4.0) throw PreconditionError("strichartz_scan: exponent must satisfy p > 4");
  if (ensemble < 1) throw PreconditionError("strichartz_scan: empty ensemble");
  EstimateReport report;
  for (int band : bands) {
    const SphereGrid base = make_grid(smooth_grid_order(4 * band + 1));
    const SphereGrid fine = make_grid(smooth_grid_order(8 * base.order));
    const int nt = time_sample_count(2 * band, t1 - t0);
    double best = 0.0;
    for (int rep = 0; rep < ensemble; ++rep) {
      ZonalField u0 = gaussian_band_field(
          derive_seed(seed, {static_cast<std::uint64_t>(band), static_cast<std::uint64_t>(rep)}),
          band);
      double l2 = norm_l2(u0);
      if (l2 == 0.0) continue;
      double st = space_time_lp(u0, p, t0, t1, nt, fine);
      best = std::max(best, st / l2);
    }
    report.axis.push_back(band);
    report.measured.push_back(best);
    report.reference.push_back(std::pow(band, 1.5 - 5.0 / p));
  }
  fit_loglog(report);
  return report;
}

double concentration_ratio(int q, int ball_scale) {
  if (q < 1 || ball_scale < 1) {
    throw PreconditionError("concentration_ratio: need q >= 1 and N >= 1");
  }
  double len = 1.0 / ball_scale;
  int panels = std::max(256, 16 * static_cast<int>(std::ceil(q * len)));
  double integral =
      simpson([&](double th) { double s = std::sin(q * th); return s * s; }, len, panels);
  return std::sqrt(integral * 2.0 / std::numbers::pi);
}

double hflfi_kernel_entry(int p, int q, int ball_scale) {
  if (p < 1 || q < 1 || ball_scale < 2) {
    throw PreconditionError("hflfi_kernel_entry: need p, q >= 1 and N >= 2");
  }
  double len = 2.0 / ball_scale;
  int panels = std::max(512, 16 * static_cast<int>(std::ceil((p + q) * len)));
  double integral = simpson(
      [&](double th) { return std::sin(p * th) * std::sin(q * th); }, len, panels);
  return std::fabs(integral * 2.0 / std::numbers::pi);
}

EstimateReport trilinear_scan(std::span<const int> n1_axis, int n2, int n3,
                              std::uint64_t seed, double t0, double t1, int ensemble) {
  if (n3 < 1 || n2 < n3) throw PreconditionError("trilinear_scan: need N2 >= N3 >= 1");
  EstimateReport report;
  for (int n1 : n1_axis) {
    if (n1 < n2) throw PreconditionError("trilinear_scan: need N1 >= N2");
    const SphereGrid grid = make_grid(smooth_grid_order(8 * n1 + 1));
    const int nt = time_sample_count(2 * n1, t1 - t0);
    const double h = (t1 - t0) / (nt - 1);
    double best = 0.0;
    for (int rep = 0; rep < ensemble; ++rep) {
      const int ns[3] = {n1, n2, n3};
      ZonalField f[3];
      double l2prod = 1.0;
      for (int i = 0; i < 3; ++i) {
        f[i] = gaussian_band_field(
            derive_seed(seed, {static_cast<std::uint64_t>(n1), static_cast<std::uint64_t>(rep),
                               static_cast<std::uint64_t>(i)}),
            ns[i]);
        l2prod *= norm_l2(f[i]);
      }
      if (l2prod == 0.0) continue;
      std::vector<double> logs(nt, -kInf);
      std::vector<std::complex<double>> prod(grid.node_count());
      for (int it = 0; it < nt; ++it) {
        double t = t0 + h * it;
        auto v1 = synthesize(evolve_linear(f[0], t), grid);
        auto v2 = synthesize(evolve_linear(f[1], t), grid);
        auto v3 = synthesize(evolve_linear(f[2], t), grid);
        for (int j = 0; j < grid.node_count(); ++j) prod[j] = v1[j] * v2[j] * v3[j];
        double lw = std::log(it == 0 || it == nt - 1 ? h / 2.0 : h);
        logs[it] = log_lp_pow(prod, grid.weight, 2.0) + lw;
      }
      double lse = logsumexp(logs);
      double l2xt = lse == -kInf ? 0.0 : std::exp(lse / 2.0);
      best = std::max(best, l2xt / (static_cast<double>(n2) * n3 * l2prod));
    }
    report.axis.push_back(n1);
    report.measured.push_back(best);
    report.reference.push_back(static_cast<double>(n3) / n1 + 1.0 / n2);
  }
  fit_loglog(report);
  return report;
}

}  // namespace znls
