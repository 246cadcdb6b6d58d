#include "znls/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "znls/errors.hpp"

namespace znls {

IntSeq difference(const IntSeq& seq, int order) {
  if (order != 1 && order != 2) {
    throw PreconditionError("difference: order must be 1 or 2");
  }
  IntSeq out;
  out.lo = seq.lo;
  out.c.resize(seq.c.size() + 1);
  for (std::size_t i = 0; i < out.c.size(); ++i) {
    long long p = seq.lo + static_cast<long long>(i);
    out.c[i] = seq.at(p) - seq.at(p - 1);
  }
  return order == 1 ? out : difference(out, 1);
}

RationalApprox dirichlet_approx(double t, long long n) {
  if (n < 1) throw PreconditionError("dirichlet_approx: N must be >= 1");
  if (!(t >= -std::numbers::pi - 1e-12 && t <= std::numbers::pi + 1e-12)) {
    throw PreconditionError("dirichlet_approx: t outside [-pi, pi]");
  }
  double x = t / std::numbers::pi;
  if (x == 0.0) return {0, 1, 0.0};
  double ax = std::fabs(x);
  long long sign = x < 0.0 ? -1 : 1;

  long long a0 = static_cast<long long>(std::floor(ax));
  long long p_prev = 1, p_cur = a0;
  long long q_prev = 0, q_cur = 1;
  double frac = ax - static_cast<double>(a0);
  while (frac > 1e-15) {
    double inv = 1.0 / frac;
    double fa = std::floor(inv);
    if (fa > 4.0e18) break;
    long long a = static_cast<long long>(fa);
    if (a > (n - q_prev) / q_cur + 1) break;  // q would exceed n
    long long q_next = a * q_cur + q_prev;
    if (q_next > n) break;
    long long p_next = a * p_cur + p_prev;
    p_prev = p_cur;
    p_cur = p_next;
    q_prev = q_cur;
    q_cur = q_next;
    frac = inv - fa;
  }
  RationalApprox out;
  out.a = sign * p_cur;
  out.q = q_cur;
  out.beta = x - static_cast<double>(out.a) / static_cast<double>(out.q);
  return out;
}

namespace {

// support range [lo, hi] of the nonzero entries; false when the sequence is 0
bool support_range(const IntSeq& seq, long long& lo, long long& hi) {
  long long first = -1, last = -1;
  for (std::size_t i = 0; i < seq.c.size(); ++i) {
    if (seq.c[i] != std::complex<double>{0.0, 0.0}) {
      if (first < 0) first = static_cast<long long>(i);
      last = static_cast<long long>(i);
    }
  }
  if (first < 0) return false;
  lo = seq.lo + first;
  hi = seq.lo + last;
  return true;
}

}  // namespace

void verify_certificate(const WeylSequence& w) {
  if (w.n_scale < 1 || w.q_support < 1 || w.k_bound < 0.0 || w.constant <= 0.0) {
    throw PreconditionError("weyl certificate: bad parameters");
  }
  long long lo = 0, hi = 0;
  if (!support_range(w.seq, lo, hi)) return;  // zero sequence satisfies everything
  long long bound = w.q_support * w.n_scale;
  if (lo < -bound || hi > bound) {
    throw PreconditionError("weyl certificate: support exceeds [-QN, QN]");
  }
  const double n = static_cast<double>(w.n_scale);
  const double lim0 = w.constant * w.k_bound;
  for (long long p = lo; p <= hi; ++p) {
    if (std::abs(w.seq.at(p)) > lim0 * (1.0 + 1e-12)) {
      throw PreconditionError("weyl certificate: |c| exceeds K at p=" + std::to_string(p));
    }
  }
  const double lim1 = lim0 / n;
  for (long long p = lo + 1; p <= hi; ++p) {
    if (std::abs(w.seq.at(p) - w.seq.at(p - 1)) > lim1 * (1.0 + 1e-12)) {
      throw PreconditionError("weyl certificate: |delta c| exceeds K/N at p=" +
                              std::to_string(p));
    }
  }
  const double lim2 = lim0 / (n * n);
  for (long long p = lo + 2; p <= hi; ++p) {
    std::complex<double> dd = w.seq.at(p) - 2.0 * w.seq.at(p - 1) + w.seq.at(p - 2);
    if (std::abs(dd) > lim2 * (1.0 + 1e-12)) {
      throw PreconditionError("weyl certificate: |delta^2 c| exceeds K/N^2 at p=" +
                              std::to_string(p));
    }
  }
}

WeylSequence make_weyl_sequence(IntSeq seq, double k_bound, long long q_support,
                                long long n_scale, double constant) {
  WeylSequence w{std::move(seq), k_bound, q_support, n_scale, constant};
  verify_certificate(w);
  return w;
}

WeylSequence flat_sequence(long long lo, long long hi, long long n_scale) {
  if (hi < lo) throw PreconditionError("flat_sequence: empty range");
  IntSeq seq;
  seq.lo = lo;
  seq.c.assign(static_cast<std::size_t>(hi - lo + 1), {1.0, 0.0});
  long long extent = std::max(std::llabs(lo), std::llabs(hi));
  long long q = (extent + n_scale - 1) / n_scale;
  return make_weyl_sequence(std::move(seq), 1.0, std::max(1ll, q), n_scale);
}

std::complex<double> weyl_sum(const IntSeq& seq, double t) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < seq.c.size(); ++i) {
    long long p = seq.lo + static_cast<long long>(i);
    double phase = t * static_cast<double>(p) * static_cast<double>(p);
    acc += seq.c[i] * std::complex<double>{std::cos(phase), std::sin(phase)};
  }
  return acc;
}

std::complex<double> weyl_sigma(const IntSeq& seq, double t, long long m) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < seq.c.size(); ++i) {
    long long p = seq.lo + static_cast<long long>(i);
    std::complex<double> cp = seq.c[i];
    std::complex<double> cpm = seq.at(p + m);
    if (cpm == std::complex<double>{0.0, 0.0}) continue;
    double phase = t * 2.0 * static_cast<double>(m) * static_cast<double>(p);
    acc += std::conj(cp) * cpm * std::complex<double>{std::cos(phase), std::sin(phase)};
  }
  return acc;
}

double weyl_reference_bound(const WeylSequence& w, const RationalApprox& approx) {
  double n = static_cast<double>(w.n_scale);
  double q = static_cast<double>(approx.q);
  double root = std::sqrt(q * (1.0 + n * n * std::fabs(approx.beta)));
  return w.constant * w.k_bound * std::pow(static_cast<double>(w.q_support), 1.5) * n / root;
}

WeylSample weyl_check_at(const WeylSequence& w, double t) {
  WeylSample s;
  s.t = t;
  s.approx = dirichlet_approx(t, w.n_scale);
  s.s_abs = std::abs(weyl_sum(w.seq, t));
  s.bound = weyl_reference_bound(w, s.approx);
  s.ratio = s.s_abs == 0.0 ? 0.0 : s.s_abs / s.bound;
  return s;
}

WeylBoundReport verify_weyl_bound(const WeylSequence& w, std::span<const double> ts) {
  verify_certificate(w);
  WeylBoundReport report;
  report.sample_count = ts.size();
  bool first = true;
  for (double t : ts) {
    WeylSample s = weyl_check_at(w, t);
    if (first || s.ratio > report.worst.ratio) {
      report.worst = s;
      first = false;
    }
  }
  return report;
}

double weyl_sigma_diagnostic(const WeylSequence& w, double t) {
  long long extent = 2 * w.q_support * w.n_scale;
  double n = static_cast<double>(w.n_scale);
  double q = static_cast<double>(w.q_support);
  double worst = 0.0;
  for (long long m = -extent; m <= extent; ++m) {
    double sig = std::abs(weyl_sigma(w.seq, t, m));
    if (sig == 0.0) continue;
    double frac = m * t / std::numbers::pi;
    double dist = std::fabs(frac - std::round(frac));
    double denom = 1.0 + n * dist;
    worst = std::max(worst, sig * denom * denom / (n * q));
  }
  return worst;
}

std::vector<double> resonant_times(int qmax) {
  std::vector<double> ts{0.0};
  for (int q = 1; q <= qmax; ++q) {
    for (int a = -q; a <= q; ++a) {
      if (a == 0) continue;
      if (std::gcd(std::abs(a), q) != 1) continue;
      ts.push_back(std::numbers::pi * static_cast<double>(a) / q);
    }
  }
  std::sort(ts.begin(), ts.end());
  return ts;
}

}  // namespace znls
