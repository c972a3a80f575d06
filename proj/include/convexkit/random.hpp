#pragma once

// Seeded pseudo-random streams. The engine is the 64-bit Mersenne Twister
// (std::mt19937_64, MT19937-64 of Matsumoto and Nishimura), whose output
// sequence is fixed by the C++ standard. The conversions below are spelled
// out so the streams can be reproduced in any language:
//   uniform(): (next() >> 11) * 2^-53, a double in [0, 1)
//   normal():  Box-Muller on u1 = 1 - uniform(), u2 = uniform(),
//              returning sqrt(-2 ln u1) cos(2 pi u2) then the sine partner.
//   unit_vector(d): d normals, normalized (redrawn if the norm is zero).

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "convexkit/linalg.hpp"

namespace convexkit {

class Rng {
 public:
  static constexpr std::string_view kGeneratorName = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Integer in [lo, hi].
  int uniform_int(int lo, int hi);
  double normal();
  Vector gaussian(Index dim);
  Vector unit_vector(Index dim);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace convexkit
