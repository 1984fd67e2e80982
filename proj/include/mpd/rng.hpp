#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mpd/rational.hpp"

namespace mpd {

// Deterministic sampling. mt19937_64 output is pinned by the standard, and
// the bounded draw below avoids std::uniform_int_distribution, whose results
// are implementation-defined — reports must reproduce from (seed, samples).
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }

  // Unbiased uniform draw in [0, n). n must be > 0.
  uint64_t below(uint64_t n) {
    const uint64_t limit = UINT64_MAX - (UINT64_MAX % n + 1) % n;
    for (;;) {
      uint64_t v = eng_();
      if (v <= limit) return v % n;
    }
  }

  size_t index(size_t n) { return static_cast<size_t>(below(n)); }

  bool coin() { return below(2) == 1; }

  // Uniform over {0, 1/max_den, ..., 1} by denominator-then-numerator draw;
  // always able to produce the boundary cases 0, 1, 1/2 the law suites need.
  Rat unit_rat(unsigned max_den = 8) {
    uint64_t den = 1 + below(max_den);
    uint64_t num = below(den + 1);
    return Rat(Int(num), Int(den));
  }

  // A scalar in the open interval (0,1), denominator <= max_den (>= 2).
  Rat open_unit_rat(unsigned max_den = 8) {
    for (;;) {
      Rat r = unit_rat(max_den);
      if (r > 0 && r < 1) return r;
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace mpd
