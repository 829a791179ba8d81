#pragma once

#include <cstdint>

namespace cubex {

// Counter-based deterministic RNG.  Trial i draws from a stream derived only
// from (seed, i), so results are reproducible no matter how trials are
// scheduled or batched.  The generator is the splitmix64 finalizer.
inline uint64_t splitmix64_fin(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  explicit CounterRng(uint64_t seed) : seed_(seed) {}

  class Stream {
   public:
    explicit Stream(uint64_t state) : state_(state) {}

    uint64_t next() {
      state_ += 0x9E3779B97F4A7C15ull;
      return splitmix64_fin(state_);
    }

    // Unbiased uniform draw from [0, m) by rejection.
    uint64_t below(uint64_t m) {
      uint64_t lim = UINT64_MAX - UINT64_MAX % m;
      uint64_t x;
      do {
        x = next();
      } while (x >= lim);
      return x % m;
    }

   private:
    uint64_t state_;
  };

  Stream stream(uint64_t trial) const {
    return Stream(splitmix64_fin(seed_ ^ splitmix64_fin(trial + 0x9E3779B97F4A7C15ull)));
  }

 private:
  uint64_t seed_;
};

}  // namespace cubex
