#ifndef DYSOB_RANDOM_HPP
#define DYSOB_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "dysob/haar.hpp"
#include "dysob/step_function.hpp"

namespace dysob {

/// Counter-based generator: every drawn number is a pure function of
/// (seed, stream, counter), so batches are reproducible regardless of
/// evaluation order or thread count, and a coefficient at (level, pos)
/// keeps its value when the depth changes.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ull))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  /// Uniform in [0,1) with 53 random bits.
  double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; one value per call, no caching.
  double next_normal() {
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0,1]
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Combined stream id for one coefficient slot, stable across depths.
inline std::uint64_t slot_id(int level, std::int64_t pos) {
  return (std::uint64_t{1} << level) + static_cast<std::uint64_t>(pos);
}

/// Random Haar spectrum: mean and coefficients i.i.d. standard normal,
/// with the level-j coefficients damped by 2^{-j*alpha}. alpha = 0 gives
/// rough symbols, alpha near s gives near-critical ones.
inline HaarCoeffs random_haar_coeffs(std::uint64_t seed, int depth, double alpha = 0.0) {
  HaarCoeffs c = HaarCoeffs::zero(depth);
  {
    SplitMix g(seed, 0);
    c.mean() = g.next_normal();
  }
  for (int j = 0; j < depth; ++j) {
    const double damp = std::pow(2.0, -alpha * j);
    for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
      SplitMix g(seed, slot_id(j, k));
      c.at({j, k}) = damp * g.next_normal();
    }
  }
  return c;
}

inline StepFunction random_step_function(std::uint64_t seed, int depth, double alpha = 0.0) {
  return haar_synthesize(random_haar_coeffs(seed, depth, alpha));
}

inline StepFunction random_nonnegative_step_function(std::uint64_t seed, int depth,
                                                     double alpha = 0.0) {
  return random_step_function(seed, depth, alpha).abs();
}

/// Seed for sample `index` of a named experiment stream.
inline std::uint64_t sample_seed(std::uint64_t base_seed, std::uint64_t experiment,
                                 std::uint64_t index) {
  return SplitMix::mix(base_seed ^ SplitMix::mix(experiment * 0x100000001b3ull + index + 1));
}

}  // namespace dysob

#endif  // DYSOB_RANDOM_HPP
