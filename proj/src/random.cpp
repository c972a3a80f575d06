#include "convexkit/random.hpp"

#include <cmath>
#include <numbers>

namespace convexkit {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

double Rng::normal() {
  if (spare_normal_) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_normal_ = r * std::sin(a);
  return r * std::cos(a);
}

Vector Rng::gaussian(Index dim) {
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = normal();
  return v;
}

Vector Rng::unit_vector(Index dim) {
  for (;;) {
    Vector v = gaussian(dim);
    const double n = v.norm();
    if (n > 0.0) return v / n;
  }
}

}  // namespace convexkit
