#pragma once

#include <cstdint>
#include <random>

namespace graphlearn {

/// Seedable generator with a fully specified output sequence.
///
/// Engine is std::mt19937_64 (fixed by the standard). The distributions are
/// implemented here rather than taken from <random>, whose algorithms are
/// implementation-defined:
///   uniform()      top 53 bits of one draw scaled by 2^-53, in [0, 1)
///   normal()       Box-Muller cosine branch from two uniform() draws
///   below(n)       rejection sampling on the 64-bit draw, in [0, n)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double normal();
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace graphlearn
