// Seeded random source with platform-independent draws.
//
// std::mt19937_64 output is fully specified by the standard, but the
// standard distributions are not, so bounded draws are done here.

#ifndef WARDMIP_RANDOM_H_
#define WARDMIP_RANDOM_H_

#include <cstdint>
#include <random>

namespace wardmip {

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform integer in [lo, hi]. Requires lo <= hi.
  int64_t Uniform(int64_t lo, int64_t hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<int64_t>(engine_());
    const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    uint64_t draw = engine_();
    while (draw >= limit) draw = engine_();
    return lo + static_cast<int64_t>(draw % span);
  }

  // True with probability `p`, resolved to 1/2^32.
  bool Bernoulli(double p) {
    const uint64_t threshold = static_cast<uint64_t>(p * 4294967296.0);
    return (engine_() >> 32) < threshold;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wardmip

#endif  // WARDMIP_RANDOM_H_
