#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace loopsoup {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

// Counter-based stream keyed by (seed, id0, id1, ...). Streams with distinct
// keys are independent for Monte Carlo purposes and independent of scheduling,
// so parallel replication is order-free and byte-reproducible.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t h = detail::mix64(seed ^ 0x6c62272e07bb0142ULL);
    for (std::uint64_t k : keys) h = detail::mix64(h ^ detail::mix64(k + 0x2545f4914f6cdd1dULL));
    state_ = h;
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in {0,...,n-1}, unbiased.
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) throw std::domain_error("next_below: n == 0");
    const std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= lim);
    return x % n;
  }

  // Exact Poisson by inversion; large intensities split into chunks so the
  // running product never underflows.
  std::uint64_t poisson(double lambda) {
    if (!(lambda >= 0.0)) throw std::domain_error("poisson: negative intensity");
    std::uint64_t total = 0;
    while (lambda > 0.0) {
      const double chunk = lambda > 30.0 ? 30.0 : lambda;
      lambda -= chunk;
      const double l = std::exp(-chunk);
      double p = 1.0;
      std::uint64_t k = 0;
      do {
        ++k;
        p *= next_double();
      } while (p > l);
      total += k - 1;
    }
    return total;
  }

  // Index sampled proportionally to non-negative weights (linear scan).
  size_t discrete(const std::vector<double>& w, double total) {
    const double u = next_double() * total;
    double acc = 0.0;
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      acc += w[i];
      if (u < acc) return i;
    }
    return w.empty() ? 0 : w.size() - 1;
  }

 private:
  std::uint64_t state_ = 0;
};

}  // namespace loopsoup
