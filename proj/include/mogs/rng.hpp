#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace mogs {

// Deterministic random source. We avoid the std distribution objects because
// their output is implementation-defined; identical seeds must reproduce
// identical traces everywhere the library runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // splitmix64 step
  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  double normal() {
    // Box-Muller; one value per call keeps the stream position predictable.
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  // Independent substream; mixing the label keeps substreams decorrelated.
  Rng fork(std::uint64_t label) {
    return Rng(next_u64() ^ (label * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL));
  }

 private:
  std::uint64_t state_;
};

}  // namespace mogs
