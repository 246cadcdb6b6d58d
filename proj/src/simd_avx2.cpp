// AVX2+FMA variants of the inner kernels.  Compiled only on x86-64 (see
// src/CMakeLists.txt); selected at runtime when the CPU reports avx2+fma.
#include <immintrin.h>

#include <cmath>
#include <vector>

#include "znls/simd.hpp"

namespace znls::kern::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// sin/cos by Taylor series, valid to full double precision for |x| <= 0.1
inline void sincos_small(__m256d x, __m256d& s, __m256d& c) {
  const __m256d x2 = _mm256_mul_pd(x, x);
  __m256d p = _mm256_set1_pd(1.0 / 362880.0);
  p = _mm256_fmadd_pd(p, x2, _mm256_set1_pd(-1.0 / 5040.0));
  p = _mm256_fmadd_pd(p, x2, _mm256_set1_pd(1.0 / 120.0));
  p = _mm256_fmadd_pd(p, x2, _mm256_set1_pd(-1.0 / 6.0));
  p = _mm256_fmadd_pd(p, x2, _mm256_set1_pd(1.0));
  s = _mm256_mul_pd(p, x);
  __m256d q = _mm256_set1_pd(-1.0 / 3628800.0);
  q = _mm256_fmadd_pd(q, x2, _mm256_set1_pd(1.0 / 40320.0));
  q = _mm256_fmadd_pd(q, x2, _mm256_set1_pd(-1.0 / 720.0));
  q = _mm256_fmadd_pd(q, x2, _mm256_set1_pd(1.0 / 24.0));
  q = _mm256_fmadd_pd(q, x2, _mm256_set1_pd(-0.5));
  c = _mm256_fmadd_pd(q, x2, _mm256_set1_pd(1.0));
}

}  // namespace

void cmul_inplace(std::complex<double>* a, const std::complex<double>* b, std::size_t n) {
  auto* pa = reinterpret_cast<double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(pa + 2 * i);
    __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    __m256d bre = _mm256_movedup_pd(vb);
    __m256d bim = _mm256_permute_pd(vb, 0xF);
    __m256d aswap = _mm256_permute_pd(va, 0x5);
    __m256d res = _mm256_fmaddsub_pd(va, bre, _mm256_mul_pd(aswap, bim));
    _mm256_storeu_pd(pa + 2 * i, res);
  }
  for (; i < n; ++i) a[i] *= b[i];
}

void quintic_phase_inplace(std::complex<double>* u, std::size_t n, double alpha) {
  auto* p = reinterpret_cast<double*>(u);
  const __m256d valpha = _mm256_set1_pd(alpha);
  const __m256d thresh = _mm256_set1_pd(0.1);
  const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffll));
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(p + 2 * i);
    __m256d sq = _mm256_mul_pd(va, va);
    __m256d m2 = _mm256_hadd_pd(sq, sq);  // |z|^2 duplicated per complex
    __m256d phi = _mm256_mul_pd(valpha, _mm256_mul_pd(m2, m2));
    __m256d s, c;
    if (_mm256_movemask_pd(_mm256_cmp_pd(_mm256_and_pd(phi, absmask), thresh,
                                         _CMP_GT_OQ)) == 0) {
      sincos_small(phi, s, c);
    } else {
      alignas(32) double tmp[4];
      _mm256_store_pd(tmp, phi);
      double s0 = std::sin(tmp[0]), c0 = std::cos(tmp[0]);
      double s1 = std::sin(tmp[2]), c1 = std::cos(tmp[2]);
      s = _mm256_set_pd(s1, s1, s0, s0);
      c = _mm256_set_pd(c1, c1, c0, c0);
    }
    __m256d aswap = _mm256_permute_pd(va, 0x5);
    __m256d res = _mm256_fmaddsub_pd(va, c, _mm256_mul_pd(aswap, s));
    _mm256_storeu_pd(p + 2 * i, res);
  }
  for (; i < n; ++i) {
    double re = u[i].real(), im = u[i].imag();
    double m2 = re * re + im * im;
    double phi = alpha * m2 * m2;
    double cc = std::cos(phi), ss = std::sin(phi);
    u[i] = {re * cc - im * ss, re * ss + im * cc};
  }
}

double weighted_abs2_sum(const std::complex<double>* u, const double* w, std::size_t n) {
  const auto* pu = reinterpret_cast<const double*>(u);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(pu + 2 * i);
    __m256d b = _mm256_loadu_pd(pu + 2 * i + 4);
    __m256d habs = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    // habs = [|u0|^2, |u2|^2, |u1|^2, |u3|^2]
    __m256d vw = _mm256_permute4x64_pd(_mm256_loadu_pd(w + i), 0xD8);
    acc = _mm256_fmadd_pd(habs, vw, acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) {
    double re = u[i].real(), im = u[i].imag();
    out += w[i] * (re * re + im * im);
  }
  return out;
}

double sumsq(const std::complex<double>* u, std::size_t n) {
  const auto* pu = reinterpret_cast<const double*>(u);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d a = _mm256_loadu_pd(pu + 2 * i);
    acc = _mm256_fmadd_pd(a, a, acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) {
    double re = u[i].real(), im = u[i].imag();
    out += re * re + im * im;
  }
  return out;
}

double weighted_abspow_sum_even(const std::complex<double>* u, const double* w,
                                std::size_t n, int p) {
  const int half = p / 2;
  const auto* pu = reinterpret_cast<const double*>(u);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(pu + 2 * i);
    __m256d b = _mm256_loadu_pd(pu + 2 * i + 4);
    __m256d m2 = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    __m256d pw = _mm256_set1_pd(1.0);
    __m256d base = m2;
    int e = half;
    while (e > 0) {
      if (e & 1) pw = _mm256_mul_pd(pw, base);
      base = _mm256_mul_pd(base, base);
      e >>= 1;
    }
    __m256d vw = _mm256_permute4x64_pd(_mm256_loadu_pd(w + i), 0xD8);
    acc = _mm256_fmadd_pd(pw, vw, acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) {
    double re = u[i].real(), im = u[i].imag();
    double m2 = re * re + im * im;
    double pw = 1.0, base = m2;
    int e = half;
    while (e > 0) {
      if (e & 1) pw *= base;
      base *= base;
      e >>= 1;
    }
    out += w[i] * pw;
  }
  return out;
}

void cheb_u_weighted_sums(const double* x, const double* w, std::size_t n,
                          int kmax, double* acc) {
  // Four independent recurrence chains in flight to hide FMA latency.
  alignas(32) double scratch[4];
  std::vector<double> accv(static_cast<std::size_t>(kmax) * 4, 0.0);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    __m256d x0 = _mm256_loadu_pd(x + i);
    __m256d x1 = _mm256_loadu_pd(x + i + 4);
    __m256d x2 = _mm256_loadu_pd(x + i + 8);
    __m256d x3 = _mm256_loadu_pd(x + i + 12);
    const __m256d two = _mm256_set1_pd(2.0);
    x0 = _mm256_mul_pd(x0, two);
    x1 = _mm256_mul_pd(x1, two);
    x2 = _mm256_mul_pd(x2, two);
    x3 = _mm256_mul_pd(x3, two);
    __m256d p0 = _mm256_setzero_pd(), p1 = p0, p2 = p0, p3 = p0;
    __m256d c0 = _mm256_loadu_pd(w + i);
    __m256d c1 = _mm256_loadu_pd(w + i + 4);
    __m256d c2 = _mm256_loadu_pd(w + i + 8);
    __m256d c3 = _mm256_loadu_pd(w + i + 12);
    for (int k = 0; k < kmax; ++k) {
      __m256d sum01 = _mm256_add_pd(c0, c1);
      __m256d sum23 = _mm256_add_pd(c2, c3);
      __m256d total = _mm256_add_pd(sum01, sum23);
      __m256d prevacc = _mm256_loadu_pd(&accv[4 * k]);
      _mm256_storeu_pd(&accv[4 * k], _mm256_add_pd(prevacc, total));
      __m256d n0 = _mm256_fmsub_pd(x0, c0, p0);
      __m256d n1 = _mm256_fmsub_pd(x1, c1, p1);
      __m256d n2 = _mm256_fmsub_pd(x2, c2, p2);
      __m256d n3 = _mm256_fmsub_pd(x3, c3, p3);
      p0 = c0; p1 = c1; p2 = c2; p3 = c3;
      c0 = n0; c1 = n1; c2 = n2; c3 = n3;
    }
  }
  for (int k = 0; k < kmax; ++k) {
    _mm256_store_pd(scratch, _mm256_loadu_pd(&accv[4 * k]));
    acc[k] = ((scratch[0] + scratch[1]) + (scratch[2] + scratch[3]));
  }
  // scalar tail
  for (; i < n; ++i) {
    double two_x = 2.0 * x[i];
    double prev = 0.0;
    double cur = w[i];
    acc[0] += cur;
    for (int k = 1; k < kmax; ++k) {
      double next = two_x * cur - prev;
      acc[k] += next;
      prev = cur;
      cur = next;
    }
  }
}

}  // namespace znls::kern::avx2
