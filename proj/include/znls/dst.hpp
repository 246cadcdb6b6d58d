#pragma once

#include <complex>
#include <cstddef>

namespace znls {

// Type-I discrete sine transform on the interior nodes of a grid of the given
// order (length = order-1), FFTW RODFT00 backend:
//   out_k = 2 * sum_{j=1}^{order-1} in_j sin(pi j k / order)
// The transform is its own inverse up to the factor 2*order.
class DstPlan {
 public:
  explicit DstPlan(int grid_order);
  ~DstPlan();
  DstPlan(const DstPlan&) = delete;
  DstPlan& operator=(const DstPlan&) = delete;

  int length() const { return n_; }
  void execute(const double* in, double* out) const;

 private:
  int n_;
  double* buf_;
  void* plan_;
};

// cached plan per grid order
const DstPlan& dst_plan(int grid_order);

// complex transform = two real transforms (real and imaginary parts)
void dst_complex(int grid_order, const std::complex<double>* in, std::complex<double>* out);

}  // namespace znls
