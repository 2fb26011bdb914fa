#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace coevo {

/// Labels for the independent random sub-streams of a single run.
enum class Stream : std::uint64_t {
  Topology = 1,
  InitWeights = 2,
  InitStrategies = 3,
  Dynamics = 4,
};

/// Mixes a seed with a sequence of labels into a new 64-bit seed
/// (splitmix64 finalizer applied per label).
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> labels);

inline std::uint64_t derive_seed(std::uint64_t seed, Stream label) {
  return derive_seed(seed, {static_cast<std::uint64_t>(label)});
}

/// Random stream used throughout the simulator.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Conversions to reals and bounded integers are done here rather
/// than through <random> distributions, whose algorithms are
/// implementation-defined, so trajectories do not depend on the standard
/// library in use.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// True with probability p (p <= 0 never, p >= 1 always).
  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace coevo
