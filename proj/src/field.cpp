#include "znls/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "znls/bump.hpp"
#include "znls/dst.hpp"
#include "znls/errors.hpp"
#include "znls/simd.hpp"

namespace znls {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double zonal_eval(int k, double theta) {
  if (k < 1) throw PreconditionError("zonal_eval: mode index must be >= 1");
  if (theta < 0.0 || theta > std::numbers::pi) {
    throw PreconditionError("zonal_eval: theta outside [0, pi]");
  }
  double kk = static_cast<double>(k);
  if (theta == 0.0) return kk * kk;
  if (theta == std::numbers::pi) return (k % 2 == 0 ? -1.0 : 1.0) * kk * kk;
  double s = std::sin(theta);
  if (s == 0.0) return kk * kk;  // roundoff guard very close to the poles
  return kk * std::sin(kk * theta) / s;
}

ZonalField unit_mode(int k, int truncation) {
  ZonalField f(truncation);
  if (k >= 1 && k <= truncation) f.coef[k - 1] = {1.0, 0.0};
  return f;
}

ZonalField analyze(std::span<const std::complex<double>> values, const SphereGrid& grid,
                   int truncation) {
  const int n = grid.node_count();
  if (static_cast<int>(values.size()) != n) {
    throw PreconditionError("analyze: sample count does not match grid");
  }
  if (truncation < 1 || truncation > n) {
    throw PreconditionError("analyze: truncation must satisfy 1 <= K <= order-1, got K=" +
                            std::to_string(truncation));
  }
  std::vector<std::complex<double>> v(n);
  for (int j = 0; j < n; ++j) v[j] = values[j] * grid.sin_theta[j];
  std::vector<std::complex<double>> s(n);
  dst_complex(grid.order, v.data(), s.data());
  ZonalField f(truncation);
  // c_k = sqrt2*pi*b_k with b_k = S_k/M, S_k the unnormalized transform output
  const double scale = kZonalNorm / grid.order;
  for (int k = 1; k <= truncation; ++k) f.coef[k - 1] = s[k - 1] * scale;
  return f;
}

std::vector<std::complex<double>> synthesize(const ZonalField& field, const SphereGrid& grid) {
  const int n = grid.node_count();
  if (field.truncation > n) {
    throw PreconditionError("synthesize: field truncation exceeds grid order - 1");
  }
  std::vector<std::complex<double>> a(n, {0.0, 0.0});
  const double scale = 1.0 / (2.0 * kZonalNorm);
  for (int k = 1; k <= field.truncation; ++k) a[k - 1] = field.coef[k - 1] * scale;
  std::vector<std::complex<double>> w(n);
  dst_complex(grid.order, a.data(), w.data());
  for (int j = 0; j < n; ++j) w[j] /= grid.sin_theta[j];
  return w;
}

std::complex<double> eval_at_pole(const ZonalField& field, bool south) {
  std::complex<double> acc{0.0, 0.0};
  for (int k = 1; k <= field.truncation; ++k) {
    double sign = south && (k % 2 == 0) ? -1.0 : 1.0;
    acc += field.coef[k - 1] * (sign * k);
  }
  return acc / kZonalNorm;
}

double band_weight(const BandSpec& band, int k) {
  switch (band.kind) {
    case BandSpec::Kind::mode:
      return k == band.index ? 1.0 : 0.0;
    case BandSpec::Kind::dyadic:
      return band_weight_dyadic(k, band.index);
    case BandSpec::Kind::lowpass:
      return band_weight_lowpass(k, band.index);
  }
  return 0.0;
}

namespace {
void validate_band(const BandSpec& band) {
  if (band.kind == BandSpec::Kind::mode) {
    if (band.index < 1) throw PreconditionError("project: mode index must be >= 1");
    return;
  }
  int n = band.index;
  if (n < 1 || (n & (n - 1)) != 0) {
    throw PreconditionError("project: dyadic band must be a power of two, got " +
                            std::to_string(n));
  }
}
}  // namespace

ZonalField project(const ZonalField& field, const BandSpec& band) {
  validate_band(band);
  ZonalField out(field.truncation);
  for (int k = 1; k <= field.truncation; ++k) {
    out.coef[k - 1] = field.coef[k - 1] * band_weight(band, k);
  }
  return out;
}

ZonalField apply_L(const ZonalField& field) {
  ZonalField out(field.truncation);
  for (int k = 1; k <= field.truncation; ++k) {
    out.coef[k - 1] = field.coef[k - 1] * (static_cast<double>(k) * k);
  }
  return out;
}

double norm_l2(const ZonalField& field) {
  return std::sqrt(kern::sumsq(field.coef.data(), field.coef.size()));
}

double log_lp_pow(std::span<const std::complex<double>> values, std::span<const double> weight,
                  double p) {
  double m2max = 0.0;
  const std::size_t n = values.size();
  for (std::size_t i = 0; i < n; ++i) {
    double re = values[i].real(), im = values[i].imag();
    double m2 = re * re + im * im;
    if (m2 > m2max) m2max = m2;
  }
  if (m2max == 0.0) return -kInf;
  const double half = p / 2.0;
  const bool integer_half = half == std::floor(half);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double re = values[i].real(), im = values[i].imag();
    double ratio = (re * re + im * im) / m2max;
    double t;
    if (integer_half) {
      t = 1.0;
      double base = ratio;
      int e = static_cast<int>(half);
      while (e > 0) {
        if (e & 1) t *= base;
        base *= base;
        e >>= 1;
      }
    } else {
      t = std::pow(ratio, half);
    }
    acc += weight[i] * t;
  }
  return std::log(acc * kZonalFactor) + half * std::log(m2max);
}

double logsumexp(std::span<const double> logs) {
  double mx = -kInf;
  for (double v : logs) mx = std::max(mx, v);
  if (mx == -kInf) return -kInf;
  double acc = 0.0;
  for (double v : logs) acc += std::exp(v - mx);
  return mx + std::log(acc);
}

double norm(const ZonalField& field, const SphereGrid& grid, const NormSpec& spec) {
  switch (spec.kind) {
    case NormSpec::Kind::lp: {
      double p = spec.param;
      if (p < 1.0 || !std::isfinite(p)) {
        throw PreconditionError("norm: L^p requires 1 <= p < inf");
      }
      auto vals = synthesize(field, grid);
      double lg = log_lp_pow(vals, grid.weight, p);
      return lg == -kInf ? 0.0 : std::exp(lg / p);
    }
    case NormSpec::Kind::hs: {
      double s = spec.param;
      double acc = 0.0;
      for (int k = 1; k <= field.truncation; ++k) {
        double re = field.coef[k - 1].real(), im = field.coef[k - 1].imag();
        acc += std::pow(static_cast<double>(k), 2.0 * s) * (re * re + im * im);
      }
      return std::sqrt(acc);
    }
    case NormSpec::Kind::linf: {
      const SphereGrid fine = make_grid(smooth_grid_order(8 * grid.order));
      auto vals = synthesize(field, fine);
      double mx = 0.0;
      for (const auto& v : vals) mx = std::max(mx, std::abs(v));
      mx = std::max(mx, std::abs(eval_at_pole(field, false)));
      mx = std::max(mx, std::abs(eval_at_pole(field, true)));
      return mx;
    }
  }
  return 0.0;
}

// ---- projector kernel oracle ----

ProjectorKernelOracle::ProjectorKernelOracle(const SphereGrid& out_grid, int quad_order,
                                             int max_mode)
    : grid_(out_grid), mq_(quad_order), kmax_(max_mode) {
  if (mq_ < 64 || mq_ % 2 != 0) {
    throw PreconditionError("projector oracle: quadrature order must be even and >= 64");
  }
  if (kmax_ < 1 || kmax_ > mq_ - 1) {
    throw PreconditionError("projector oracle: bad max mode");
  }
  const int nodes = grid_.node_count();
  const int nq = mq_ - 1;
  const double h = std::numbers::pi / mq_;
  // psi weights: composite Simpson coefficients times sin(psi); endpoints vanish
  std::vector<double> cpsi(nq), spsi(nq);
  for (int l = 1; l <= nq; ++l) {
    double psi = h * l;
    cpsi[l - 1] = std::cos(psi);
    spsi[l - 1] = (h / 3.0) * (l % 2 == 1 ? 4.0 : 2.0) * std::sin(psi);
  }
  kernel_.assign(static_cast<std::size_t>(kmax_) * nodes * nq, 0.0);
  const SphereGrid quad = make_grid(mq_);
  std::vector<double> x(nq);
  std::vector<double> sums(kmax_);
  for (int i = 0; i < nodes; ++i) {
    double ct = std::cos(grid_.theta[i]);
    double st = grid_.sin_theta[i];
    for (int j = 0; j < nq; ++j) {
      double a = ct * std::cos(quad.theta[j]);
      double b = st * quad.sin_theta[j];
      for (int l = 0; l < nq; ++l) x[l] = a + b * cpsi[l];
      kern::cheb_u_weighted_sums(x.data(), spsi.data(), nq, kmax_, sums.data());
      for (int k = 0; k < kmax_; ++k) {
        kernel_[(static_cast<std::size_t>(k) * nodes + i) * nq + j] = sums[k];
      }
    }
  }
}

std::vector<std::complex<double>> ProjectorKernelOracle::apply_values(const ZonalField& f,
                                                                      int k) const {
  if (k < 1 || k > kmax_) throw PreconditionError("projector oracle: mode out of range");
  if (k > f.truncation) {
    throw PreconditionError("projector oracle: mode exceeds field truncation");
  }
  const SphereGrid quad = make_grid(mq_);
  auto fvals = synthesize(f, quad);
  const int nq = mq_ - 1;
  const double h = std::numbers::pi / mq_;
  std::vector<std::complex<double>> g(nq);
  for (int j = 0; j < nq; ++j) {
    g[j] = fvals[j] * (quad.sin_theta[j] * quad.sin_theta[j] * h);
  }
  const int nodes = grid_.node_count();
  std::vector<std::complex<double>> out(nodes);
  const double scale = static_cast<double>(k) / std::numbers::pi;
  for (int i = 0; i < nodes; ++i) {
    const double* row = &kernel_[(static_cast<std::size_t>(k - 1) * nodes + i) * nq];
    double accr = 0.0, acci = 0.0;
    for (int j = 0; j < nq; ++j) {
      accr += row[j] * g[j].real();
      acci += row[j] * g[j].imag();
    }
    out[i] = std::complex<double>{accr, acci} * scale;
  }
  return out;
}

ZonalField ProjectorKernelOracle::apply(const ZonalField& f, int k) const {
  auto vals = apply_values(f, k);
  return analyze(vals, grid_, f.truncation);
}

ZonalField projector_kernel_oracle(const ZonalField& f, int k, int quad_order,
                                   const SphereGrid& grid) {
  ProjectorKernelOracle oracle(grid, quad_order, k);
  return oracle.apply(f, k);
}

// ---- Z norm ----

std::vector<int> dyadic_bands(int truncation) {
  std::vector<int> bands{1};
  while (bands.back() < std::max(1, truncation)) bands.push_back(2 * bands.back());
  return bands;
}

namespace {

struct ZAccum {
  double value = 0.0;
  double tail_share = 0.0;
};

ZAccum z_norm_impl(const TimeSeries& traj, double t_lo, double t_hi, const SphereGrid& grid) {
  if (traj.time.empty() || traj.field.empty()) {
    throw PreconditionError("z_norm: empty trajectory");
  }
  // mesh points inside [t_lo, t_hi]
  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(traj.time.size()); ++i) {
    double t = traj.time[i];
    if (t >= t_lo - 1e-12 && t <= t_hi + 1e-12) idx.push_back(i);
  }
  if (idx.size() < 2) throw PreconditionError("z_norm: fewer than two mesh points in window");
  const int K = traj.field[idx[0]].truncation;
  const auto bands = dyadic_bands(K);
  const int nb = static_cast<int>(bands.size());
  const int nt = static_cast<int>(idx.size());

  // log of the spatial L^p integrand per (p, band, time)
  const double ps[2] = {kZnormP0, kZnormP1};
  std::vector<double> lsp(2 * nb * nt, -kInf);
  for (int ti = 0; ti < nt; ++ti) {
    const ZonalField& u = traj.field[idx[ti]];
    for (int bi = 0; bi < nb; ++bi) {
      ZonalField pu = project(u, BandSpec::dyadic(bands[bi]));
      bool zero = true;
      for (const auto& c : pu.coef) {
        if (c != std::complex<double>{0.0, 0.0}) {
          zero = false;
          break;
        }
      }
      if (zero) continue;
      auto vals = synthesize(pu, grid);
      for (int pi = 0; pi < 2; ++pi) {
        lsp[(pi * nb + bi) * nt + ti] = log_lp_pow(vals, grid.weight, ps[pi]);
      }
    }
  }

  ZAccum out;
  for (int pi = 0; pi < 2; ++pi) {
    const double p = ps[pi];
    double best = -kInf;
    int best_left = -1, best_right = -1;
    for (int a = 0; a + 1 < nt; ++a) {
      int b = a;
      while (b + 1 < nt && traj.time[idx[b + 1]] - traj.time[idx[a]] <= 1.0 + 1e-12) ++b;
      if (b == a) continue;
      // trapezoid log-weights on [a, b]
      std::vector<double> lw(b - a + 1);
      for (int m = a; m <= b; ++m) {
        double left = m == a ? traj.time[idx[m]] : traj.time[idx[m - 1]];
        double right = m == b ? traj.time[idx[m]] : traj.time[idx[m + 1]];
        lw[m - a] = std::log((right - left) / 2.0);
      }
      std::vector<double> per_band(nb, -kInf);
      for (int bi = 0; bi < nb; ++bi) {
        std::vector<double> terms(b - a + 1);
        for (int m = a; m <= b; ++m) terms[m - a] = lsp[(pi * nb + bi) * nt + m] + lw[m - a];
        per_band[bi] = logsumexp(terms);
      }
      std::vector<double> weighted(nb);
      for (int bi = 0; bi < nb; ++bi) {
        weighted[bi] = (5.0 - p / 2.0) * std::log(static_cast<double>(bands[bi])) + per_band[bi];
      }
      double total = logsumexp(weighted);
      if (total > best) {
        best = total;
        best_left = a;
        best_right = b;
      }
    }
    if (best == -kInf) continue;
    out.value += std::exp(best / p);
    // tail share at the arg-max window
    {
      int a = best_left, b = best_right;
      std::vector<double> lw(b - a + 1);
      for (int m = a; m <= b; ++m) {
        double left = m == a ? traj.time[idx[m]] : traj.time[idx[m - 1]];
        double right = m == b ? traj.time[idx[m]] : traj.time[idx[m + 1]];
        lw[m - a] = std::log((right - left) / 2.0);
      }
      std::vector<double> weighted(nb), tail;
      for (int bi = 0; bi < nb; ++bi) {
        std::vector<double> terms(b - a + 1);
        for (int m = a; m <= b; ++m) terms[m - a] = lsp[(pi * nb + bi) * nt + m] + lw[m - a];
        weighted[bi] =
            (5.0 - p / 2.0) * std::log(static_cast<double>(bands[bi])) + logsumexp(terms);
        if (2 * bands[bi] > K) tail.push_back(weighted[bi]);
      }
      double total_log = logsumexp(weighted);
      double tl = logsumexp(tail);
      double share = tl == -kInf ? 0.0 : std::exp(tl - total_log);
      out.tail_share = std::max(out.tail_share, share);
    }
  }
  return out;
}

}  // namespace

double z_norm(const TimeSeries& traj, double t_lo, double t_hi, const SphereGrid& grid) {
  return z_norm_impl(traj, t_lo, t_hi, grid).value;
}

ZNormInfo z_norm_info(const TimeSeries& traj, double t_lo, double t_hi,
                      const SphereGrid& grid) {
  ZAccum a = z_norm_impl(traj, t_lo, t_hi, grid);
  return {a.value, a.tail_share};
}

}  // namespace znls
