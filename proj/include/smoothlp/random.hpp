#pragma once

// Counter-based randomness: every variate is a pure function of
// (seed, stream, counter), so trials can be generated in any order or in
// parallel and still reproduce bit for bit.

#include <array>
#include <cstdint>
#include <limits>

namespace smoothlp {

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// 64 random bits for the given (seed, stream, counter) triple.
std::uint64_t random_bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

/// Uniform double strictly inside (0, 1) built from the top 53 bits.
double bits_to_open_unit(std::uint64_t bits);

/// SplitMix64 finalizer, used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

/// Standard normal CDF Phi(z).
double normal_cdf(double z);
/// Upper tail Q(z) = 1 - Phi(z), accurate deep into the tail.
double normal_sf(double z);
/// log Q(z), finite for every finite z.
double log_normal_sf(double z);
/// Inverse of Phi on (0, 1).
double normal_quantile(double p);

/// Sequential view over a counter-based stream; satisfies
/// std::uniform_random_bit_generator.
class CounterStream {
 public:
  using result_type = std::uint64_t;

  CounterStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t start = 0)
      : seed_(seed), stream_(stream), counter_(start) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return random_bits(seed_, stream_, counter_++); }

  double uniform() { return bits_to_open_unit((*this)()); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() { return normal_quantile(uniform()); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_;
};

}  // namespace smoothlp
