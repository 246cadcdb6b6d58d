#pragma once

#include <complex>
#include <cstddef>

// Data-parallel inner kernels.  Every kernel has a scalar reference
// implementation in kern::scalar; on x86-64 hosts with AVX2+FMA a vector
// variant is selected once at startup.  The two variants are equivalence-
// tested in tests/test_simd.cpp.  Reductions accumulate in a fixed order per
// variant, so a given build on a given host is bit-reproducible.
namespace znls::kern {

// name of the variant selected at startup: "avx2" or "scalar"
const char* active_isa();

// a[i] *= b[i]
void cmul_inplace(std::complex<double>* a, const std::complex<double>* b, std::size_t n);

// u[i] *= exp(i * alpha * |u[i]|^4)   (the exact pointwise quintic sub-flow)
void quintic_phase_inplace(std::complex<double>* u, std::size_t n, double alpha);

// sum_i w[i] |u[i]|^2
double weighted_abs2_sum(const std::complex<double>* u, const double* w, std::size_t n);

// sum_i |u[i]|^2
double sumsq(const std::complex<double>* u, std::size_t n);

// sum_i w[i] |u[i]|^p for even integer p >= 2 (binary powering on |u|^2)
double weighted_abspow_sum_even(const std::complex<double>* u, const double* w,
                                std::size_t n, int p);

// acc[k-1] = sum_i w[i] * U_{k-1}(x[i]) for k = 1..kmax, with U the Chebyshev
// polynomial of the second kind; sin(k g)/sin(g) = U_{k-1}(cos g) is the zonal
// kernel evaluated without inverse trig.
void cheb_u_weighted_sums(const double* x, const double* w, std::size_t n,
                          int kmax, double* acc);

namespace scalar {
void cmul_inplace(std::complex<double>* a, const std::complex<double>* b, std::size_t n);
void quintic_phase_inplace(std::complex<double>* u, std::size_t n, double alpha);
double weighted_abs2_sum(const std::complex<double>* u, const double* w, std::size_t n);
double sumsq(const std::complex<double>* u, std::size_t n);
double weighted_abspow_sum_even(const std::complex<double>* u, const double* w,
                                std::size_t n, int p);
void cheb_u_weighted_sums(const double* x, const double* w, std::size_t n,
                          int kmax, double* acc);
}  // namespace scalar

#ifdef ZNLS_AVX2_TU
namespace avx2 {
void cmul_inplace(std::complex<double>* a, const std::complex<double>* b, std::size_t n);
void quintic_phase_inplace(std::complex<double>* u, std::size_t n, double alpha);
double weighted_abs2_sum(const std::complex<double>* u, const double* w, std::size_t n);
double sumsq(const std::complex<double>* u, std::size_t n);
double weighted_abspow_sum_even(const std::complex<double>* u, const double* w,
                                std::size_t n, int p);
void cheb_u_weighted_sums(const double* x, const double* w, std::size_t n,
                          int kmax, double* acc);
}  // namespace avx2
#endif

}  // namespace znls::kern
