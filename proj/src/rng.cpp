#include "sphgof/rng.hpp"

#include <cmath>

#include "sphgof/errors.hpp"

namespace sphgof {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// Finalizer of splitmix64; a 64-bit bijection with good avalanche.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

SeedStream SeedStream::substream(std::uint64_t tag) const {
  // Two mixing rounds keep distinct (stream_id, tag) pairs from colliding in
  // practice; the seed itself is never perturbed.
  return SeedStream{seed, mix64(mix64(stream_id + kGolden) ^ (tag + kGolden))};
}

RandomStream::RandomStream(SeedStream s) {
  std::uint64_t z = mix64(s.seed + kGolden) ^ mix64(s.stream_id + 2 * kGolden);
  for (int i = 0; i < 4; ++i) {
    z += kGolden;
    state_[i] = mix64(z);
  }
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = kGolden;
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RandomStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::next_normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * next_double() - 1.0;
    v = 2.0 * next_double() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  have_spare_ = true;
  return u * f;
}

double RandomStream::next_gamma(double shape) {
  if (!(shape > 0.0)) throw InvalidConfigError("gamma shape must be positive");
  if (shape < 1.0) {
    // Boost: G(a) = G(a+1) * U^{1/a}.
    const double g = next_gamma(shape + 1.0);
    double u;
    do {
      u = next_double();
    } while (u == 0.0);
    return g * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_double();
    if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return d * v;
    }
  }
}

double RandomStream::next_beta(double a, double b) {
  const double x = next_gamma(a);
  const double y = next_gamma(b);
  return x / (x + y);
}

std::uint64_t RandomStream::next_index(std::uint64_t bound) {
  if (bound == 0) throw InvalidConfigError("next_index bound must be positive");
  if (bound == 1) return 0;
  std::uint64_t mask = bound - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  for (;;) {
    const std::uint64_t r = next_u64() & mask;
    if (r < bound) return r;
  }
}

void RandomStream::shuffle(std::vector<std::uint32_t>& v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(next_index(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace sphgof
