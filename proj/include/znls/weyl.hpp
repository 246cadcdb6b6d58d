#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace znls {

// Finitely supported complex sequence on the integers; c[i] sits at index lo+i.
struct IntSeq {
  long long lo = 0;
  std::vector<std::complex<double>> c;

  std::complex<double> at(long long p) const {
    long long i = p - lo;
    if (i < 0 || i >= static_cast<long long>(c.size())) return {0.0, 0.0};
    return c[static_cast<std::size_t>(i)];
  }
};

// forward difference (delta c)_p = c_p - c_{p-1}; order in {1, 2}
IntSeq difference(const IntSeq& seq, int order);

// Dirichlet triple for t/pi = a/q + beta with gcd(|a|,q)=1, q <= n,
// |beta| <= 1/(n q); last continued-fraction convergent with denominator <= n.
struct RationalApprox {
  long long a = 0;
  long long q = 1;
  double beta = 0.0;
};

RationalApprox dirichlet_approx(double t, long long n);

// Coefficients with certified bounds: support in [-QN, QN] and
// |delta^j c| <= constant * K * N^{-j} (j = 0 over the support, j = 1, 2 over
// the support interior, so sharp cutoff families like the flat sequence are
// admissible with K = 1).
struct WeylSequence {
  IntSeq seq;
  double k_bound = 1.0;
  long long q_support = 1;
  long long n_scale = 1;
  double constant = 1.0;
};

// verifies both certificates by exact scan; throws PreconditionError otherwise
WeylSequence make_weyl_sequence(IntSeq seq, double k_bound, long long q_support,
                                long long n_scale, double constant = 1.0);
void verify_certificate(const WeylSequence& w);

// c_p = 1 on [lo, hi]
WeylSequence flat_sequence(long long lo, long long hi, long long n_scale);

// S(t) = sum_p c_p e^{i t p^2}, direct summation in ascending p
std::complex<double> weyl_sum(const IntSeq& seq, double t);

// sigma_m = sum_p conj(c_p) c_{p+m} e^{i t 2 m p}
std::complex<double> weyl_sigma(const IntSeq& seq, double t, long long m);

// reference bound constant * K Q^{3/2} N / sqrt(q (1 + N^2 |beta|))
double weyl_reference_bound(const WeylSequence& w, const RationalApprox& approx);

struct WeylSample {
  double t = 0.0;
  double s_abs = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  RationalApprox approx;
};

WeylSample weyl_check_at(const WeylSequence& w, double t);

struct WeylBoundReport {
  WeylSample worst;
  std::size_t sample_count = 0;
};

// max over samples of |S(t)| / bound(t); re-verifies the certificate first
WeylBoundReport verify_weyl_bound(const WeylSequence& w, std::span<const double> ts);

// max over |m| <= 2QN of |sigma_m| [1 + N dist(m t/pi, Z)]^2 / (N Q)
double weyl_sigma_diagnostic(const WeylSequence& w, double t);

// all t = pi a/q with 1 <= q <= qmax, |a| <= q, gcd(|a|, q) = 1 (plus t = 0)
std::vector<double> resonant_times(int qmax);

}  // namespace znls
