#include "uisdial/domain/rng.h"

#include <limits>

namespace uisdial {

std::size_t Rng::uniform_index(std::size_t n) {
  ++draws_;
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  if (bound <= 1) {
    engine_();
    return 0;
  }
  // Reject the top partial bucket so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              (std::numeric_limits<std::uint64_t>::max() % bound);
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return static_cast<std::size_t>(x % bound);
}

double Rng::uniform01() {
  ++draws_;
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace uisdial
