#include "cavshift/rng.hpp"

#include <cmath>

#include "cavshift/constants.hpp"

namespace cavshift::rng {

double standard_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  const double u1 = uniform01(seed, stream, 2 * counter);
  const double u2 = uniform01(seed, stream, 2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * constants::pi * u2);
}

}  // namespace cavshift::rng
