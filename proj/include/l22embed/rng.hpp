#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace l22 {

// Deterministic generator used by every randomized routine. Keeps its own
// state machine (xoshiro-style splitmix step + explicit Box-Muller) instead
// of std distributions so that a (seed, input) pair reproduces bit-identical
// results regardless of standard library version. Substreams derived from a
// trial index let independent trials run in any order, or in parallel, and
// still give the same accepted result.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : base_(seed) {
    state_ = mix(seed ^ 0x9e3779b97f4a7c15ull);
    if (state_ == 0) state_ = 0x2545f4914f6cdd1dull;
  }

  std::uint64_t next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). Rejection keeps it unbiased.
  std::uint64_t uniform_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % bound;
  }

  // Standard normal via Box-Muller; one spare cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare_ = mag * std::sin(ang);
    have_spare_ = true;
    return mag * std::cos(ang);
  }

  Eigen::VectorXd gaussian(int k) {
    Eigen::VectorXd v(k);
    for (int i = 0; i < k; ++i) v[i] = normal();
    return v;
  }

  // Independent child stream for trial `id`.
  Rng substream(std::uint64_t id) const {
    return Rng(mix(base_ ^ mix(id + 0x632be59bd9b4e019ull)));
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdull;
    z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ull;
    return z ^ (z >> 33);
  }

  std::uint64_t base_;
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace l22
