#pragma once

#include <cstdint>
#include <random>

namespace uisdial {

// Seeded generator with a portable draw procedure. std::mt19937_64 output is
// fixed by the standard, but the std distributions are not, so the bounded
// and real-valued draws are implemented here. Every call counts as one draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

  // Uniform integer in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);

  // Uniform real in [0, 1) with 53 random bits.
  double uniform01();

  bool bernoulli(double p) { return uniform01() < p; }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t draws() const noexcept { return draws_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

}  // namespace uisdial
