#pragma once

#include <cstdint>
#include <vector>

namespace sphgof {

// Addressable randomness: a (seed, stream_id) pair fully determines a draw
// sequence, independent of thread schedule or platform.  Parallel code hands
// each task its own stream via substream(), which mixes a tag into the id.
struct SeedStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  SeedStream substream(std::uint64_t tag) const;
};

// xoshiro256++ (Blackman & Vigna) seeded through splitmix64, with hand-rolled
// uniform/normal/gamma/beta draws so sequences are reproducible bit-for-bit
// regardless of the standard library in use.
class RandomStream {
 public:
  explicit RandomStream(SeedStream s);

  std::uint64_t next_u64();

  // Uniform on [0, 1): 53 random mantissa bits.
  double next_double();

  // Standard normal via the Marsaglia polar method (second value cached).
  double next_normal();

  // Gamma(shape, 1) via Marsaglia-Tsang; shape < 1 handled by boosting.
  double next_gamma(double shape);

  // Beta(a, b) as a ratio of gammas.
  double next_beta(double a, double b);

  // Uniform integer in [0, bound) by masked rejection (unbiased).
  std::uint64_t next_index(std::uint64_t bound);

  // In-place Fisher-Yates shuffle.
  void shuffle(std::vector<std::uint32_t>& v);

 private:
  std::uint64_t state_[4];
  double spare_normal_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace sphgof
