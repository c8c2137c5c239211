#pragma once

#include <cstdint>
#include <random>

#include "olspace/measure.hpp"

namespace olspace {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// Seeded generator of random step functions: 1..8 pieces, values
/// log-uniform in [1e-3, 1e3], supports inside [0, min(gamma, 1)].
/// Deterministic per (seed, index) so sampling loops are order-independent.
class StepSampler {
 public:
  StepSampler(std::uint64_t seed, double gamma) : seed_(seed), gamma_(gamma) {}

  StepFunction sample(std::uint64_t index);

  /// Variant whose interval endpoints live on the dyadic lattice k/2^20, so
  /// every measure computation is exact in double arithmetic.
  StepFunction sample_dyadic(std::uint64_t index);

  /// An equimeasurable shuffle of f: supports translated into fresh disjoint
  /// positions, one interval per piece, values preserved.
  StepFunction equimeasurable_shuffle(const StepFunction& f, std::uint64_t index);

 private:
  std::uint64_t seed_;
  double gamma_;
  std::mt19937_64 rng_for(std::uint64_t index) const {
    std::seed_seq seq{seed_, index, std::uint64_t{0x9E3779B97F4A7C15ull}};
    return std::mt19937_64(seq);
  }
};

}  // namespace olspace
