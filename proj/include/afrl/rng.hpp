#ifndef AFRL_RNG_HPP
#define AFRL_RNG_HPP

#include <cmath>
#include <cstdint>
#include <vector>

namespace afrl {

inline uint64_t splitmix64(uint64_t& s) {
  uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic counter-free generator. Every consumer owns its own stream,
// derived from (seed, stream_id), so results do not depend on thread count.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {
    // decorrelate trivially related seeds
    next_u64();
    next_u64();
  }
  static Rng fork(uint64_t seed, uint64_t stream) {
    uint64_t s = seed;
    uint64_t a = splitmix64(s);
    s = a ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    uint64_t b = splitmix64(s);
    return Rng(b);
  }

  uint64_t next_u64() { return splitmix64(state_); }

  // uniform in [0,1) with 53 random bits
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double next_range(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Box-Muller, consumes exactly two uniforms per pair
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_double(), u2 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // index sampled from a cumulative weight table (cdf.back() == 1)
  int next_index(const std::vector<double>& cdf) {
    double u = next_double();
    int lo = 0, hi = int(cdf.size()) - 1;
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      if (cdf[size_t(mid)] <= u)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }

 private:
  uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace afrl

#endif
