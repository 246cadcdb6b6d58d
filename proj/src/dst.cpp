#include "znls/dst.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <vector>

#include "znls/errors.hpp"

namespace znls {

DstPlan::DstPlan(int grid_order) : n_(grid_order - 1) {
  if (n_ < 1) throw PreconditionError("DstPlan: grid order must be >= 2");
  buf_ = fftw_alloc_real(n_);
  // FFTW_ESTIMATE keeps plan creation deterministic and leaves buf_ intact.
  plan_ = fftw_plan_r2r_1d(n_, buf_, buf_, FFTW_RODFT00, FFTW_ESTIMATE);
}

DstPlan::~DstPlan() {
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(buf_);
}

void DstPlan::execute(const double* in, double* out) const {
  std::memcpy(buf_, in, sizeof(double) * n_);
  fftw_execute(static_cast<fftw_plan>(plan_));
  std::memcpy(out, buf_, sizeof(double) * n_);
}

const DstPlan& dst_plan(int grid_order) {
  static std::map<int, std::unique_ptr<DstPlan>> cache;
  auto it = cache.find(grid_order);
  if (it == cache.end()) {
    it = cache.emplace(grid_order, std::make_unique<DstPlan>(grid_order)).first;
  }
  return *it->second;
}

void dst_complex(int grid_order, const std::complex<double>* in, std::complex<double>* out) {
  const DstPlan& plan = dst_plan(grid_order);
  const int n = plan.length();
  std::vector<double> re(n), im(n), tre(n), tim(n);
  for (int j = 0; j < n; ++j) {
    re[j] = in[j].real();
    im[j] = in[j].imag();
  }
  plan.execute(re.data(), tre.data());
  plan.execute(im.data(), tim.data());
  for (int j = 0; j < n; ++j) out[j] = {tre[j], tim[j]};
}

}  // namespace znls
