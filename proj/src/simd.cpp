#include "znls/simd.hpp"

#include <cmath>

namespace znls::kern {

namespace scalar {

void cmul_inplace(std::complex<double>* a, const std::complex<double>* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] *= b[i];
}

void quintic_phase_inplace(std::complex<double>* u, std::size_t n, double alpha) {
  for (std::size_t i = 0; i < n; ++i) {
    double re = u[i].real(), im = u[i].imag();
    double m2 = re * re + im * im;
    double phi = alpha * m2 * m2;
    double c = std::cos(phi), s = std::sin(phi);
    u[i] = {re * c - im * s, re * s + im * c};
  }
}

double weighted_abs2_sum(const std::complex<double>* u, const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double re = u[i].real(), im = u[i].imag();
    acc += w[i] * (re * re + im * im);
  }
  return acc;
}

double sumsq(const std::complex<double>* u, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double re = u[i].real(), im = u[i].imag();
    acc += re * re + im * im;
  }
  return acc;
}

static inline double powi(double base, int e) {
  double out = 1.0;
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

double weighted_abspow_sum_even(const std::complex<double>* u, const double* w,
                                std::size_t n, int p) {
  int half = p / 2;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double re = u[i].real(), im = u[i].imag();
    acc += w[i] * powi(re * re + im * im, half);
  }
  return acc;
}

void cheb_u_weighted_sums(const double* x, const double* w, std::size_t n,
                          int kmax, double* acc) {
  for (int k = 0; k < kmax; ++k) acc[k] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double two_x = 2.0 * x[i];
    double prev = 0.0;        // w * U_{-1}
    double cur = w[i];        // w * U_0
    acc[0] += cur;
    for (int k = 1; k < kmax; ++k) {
      double next = two_x * cur - prev;
      acc[k] += next;
      prev = cur;
      cur = next;
    }
  }
}

}  // namespace scalar

namespace {

struct Dispatch {
  decltype(&scalar::cmul_inplace) cmul;
  decltype(&scalar::quintic_phase_inplace) quintic;
  decltype(&scalar::weighted_abs2_sum) wabs2;
  decltype(&scalar::sumsq) sumsq;
  decltype(&scalar::weighted_abspow_sum_even) wpow;
  decltype(&scalar::cheb_u_weighted_sums) cheb;
  const char* isa;
};

Dispatch pick() {
#ifdef ZNLS_AVX2_TU
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return {avx2::cmul_inplace,      avx2::quintic_phase_inplace,
            avx2::weighted_abs2_sum, avx2::sumsq,
            avx2::weighted_abspow_sum_even, avx2::cheb_u_weighted_sums,
            "avx2"};
  }
#endif
  return {scalar::cmul_inplace,      scalar::quintic_phase_inplace,
          scalar::weighted_abs2_sum, scalar::sumsq,
          scalar::weighted_abspow_sum_even, scalar::cheb_u_weighted_sums,
          "scalar"};
}

const Dispatch& table() {
  static const Dispatch d = pick();
  return d;
}

}  // namespace

const char* active_isa() { return table().isa; }

void cmul_inplace(std::complex<double>* a, const std::complex<double>* b, std::size_t n) {
  table().cmul(a, b, n);
}

void quintic_phase_inplace(std::complex<double>* u, std::size_t n, double alpha) {
  table().quintic(u, n, alpha);
}

double weighted_abs2_sum(const std::complex<double>* u, const double* w, std::size_t n) {
  return table().wabs2(u, w, n);
}

double sumsq(const std::complex<double>* u, std::size_t n) { return table().sumsq(u, n); }

double weighted_abspow_sum_even(const std::complex<double>* u, const double* w,
                                std::size_t n, int p) {
  return table().wpow(u, w, n, p);
}

void cheb_u_weighted_sums(const double* x, const double* w, std::size_t n,
                          int kmax, double* acc) {
  table().cheb(x, w, n, kmax, acc);
}

}  // namespace znls::kern
