#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace znls {

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

// Cell seed = fold of the parameter tuple into the master seed, one mix64 round
// per component, in declaration order.  Depends only on (master, tuple), never on
// execution order, so sweep cells may run in any order with identical streams.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> cell) {
  std::uint64_t h = mix64(master + 0x9e3779b97f4a7c15ull);
  for (std::uint64_t v : cell) h = mix64(h ^ (v + 0x9e3779b97f4a7c15ull));
  return h;
}

// splitmix64 stream with Box-Muller gaussians.  Fully specified here so that
// outputs are reproducible independent of the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // complex gaussian with E|z|^2 = 1
  std::complex<double> complex_gaussian() {
    return {gaussian() * std::numbers::sqrt2 / 2.0,
            gaussian() * std::numbers::sqrt2 / 2.0};
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace znls
