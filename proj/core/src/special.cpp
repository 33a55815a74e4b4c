#include "fracdyn/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fracdyn/error.hpp"

namespace fracdyn::special {
namespace {

// Lanczos approximation, g = 7, nine coefficients.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Largest argument whose gamma is finite in double precision.
constexpr double kGammaMax = 171.61447887182298;

void require_positive(double x, const char* fn) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError(std::string(fn) + ": argument must be finite and > 0, got " +
                      std::to_string(x));
  }
}

// Series sum A(x) of the Lanczos formula, valid for x >= 0.5.
double lanczos_sum(double x) {
  const double xm1 = x - 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    sum += kLanczos[i] / (xm1 + static_cast<double>(i));
  }
  return sum;
}

bool exact_factorial(double x, double& out) {
  if (x > 23.0 || x != std::floor(x)) return false;
  double f = 1.0;
  for (int k = 2; k < static_cast<int>(x); ++k) f *= k;
  out = f;
  return true;
}

}  // namespace

double gamma(double x) {
  require_positive(x, "gamma");
  if (x > kGammaMax) {
    throw DomainError("gamma: argument overflows double precision: " + std::to_string(x));
  }
  double exact = 0.0;
  if (exact_factorial(x, exact)) return exact;
  if (x < 0.5) {
    // Shift up once; the Lanczos sum is accurate for x >= 0.5.
    return gamma(x + 1.0) / x;
  }
  const double t = x - 0.5 + kLanczosG;
  // Split t^(x-0.5) so large arguments do not overflow before exp(-t).
  const double half_pow = std::pow(t, 0.5 * (x - 0.5));
  const double sqrt_two_pi = std::sqrt(2.0 * std::numbers::pi);
  return sqrt_two_pi * lanczos_sum(x) * half_pow * (half_pow * std::exp(-t));
}

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
  const double t = x - 0.5 + kLanczosG;
  return 0.5 * std::log(2.0 * std::numbers::pi) + std::log(lanczos_sum(x)) +
         (x - 0.5) * std::log(t) - t;
}

double digamma(double x) {
  require_positive(x, "digamma");
  if (x == 1.0) return -kEulerMascheroni;

  // Raise the argument until the asymptotic expansion converges to double
  // precision, accumulating psi(x) = psi(x + 1) - 1/x.
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Bernoulli terms B_2k / (2k x^2k), k = 1..7.
  const double series =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 -
                                      inv2 * (1.0 / 132.0 -
                                              inv2 * (691.0 / 32760.0 - inv2 / 12.0))))));
  return shift + std::log(x) - 0.5 * inv - series;
}

}  // namespace fracdyn::special
