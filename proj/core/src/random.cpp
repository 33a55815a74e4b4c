#include "fracdyn/random.hpp"

#include <cmath>
#include <numbers>

namespace fracdyn {

namespace {
constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;
}

double NormalSource::open_uniform() {
  return static_cast<double>((engine_() >> 11) + 1) * kTwoPow53Inv;
}

double NormalSource::uniform() { return static_cast<double>(engine_() >> 11) * kTwoPow53Inv; }

double NormalSource::next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double radius = std::sqrt(-2.0 * std::log(open_uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

}  // namespace fracdyn
