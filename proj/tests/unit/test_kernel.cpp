#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fracdyn/error.hpp"
#include "fracdyn/grid.hpp"
#include "fracdyn/kernel.hpp"

namespace fracdyn {
namespace {

const SingularityPolicy kError{};

double log_kernel_fd(const KernelSpec& spec, double s, double h) {
  return (std::log(kernel_value(spec, s + h)) - std::log(kernel_value(spec, s - h))) / (2.0 * h);
}

TEST(AlphaFunction, DerivativeMatchesFiniteDifference) {
  const AlphaFunction forms[] = {
      AlphaFunction::constant(0.7),
      AlphaFunction::affine(0.6, 0.1),
      AlphaFunction::affine(0.9, -0.2),
      AlphaFunction::logistic(0.4, 0.95, -0.3, 0.5),
  };
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> zdist(-2.0, 2.0);
  constexpr double h = 1e-6;
  for (const auto& alpha : forms) {
    for (int i = 0; i < 200; ++i) {
      const double z = zdist(rng);
      const double fd = (alpha.value(z + h) - alpha.value(z - h)) / (2.0 * h);
      EXPECT_NEAR(alpha.derivative(z), fd, 1e-6);
    }
  }
}

TEST(AlphaFunction, LogisticRequiresPositiveWidth) {
  EXPECT_THROW(AlphaFunction::logistic(0.2, 0.9, 0.0, 0.0), DomainError);
  EXPECT_THROW(AlphaFunction::constant(std::nan("")), DomainError);
}

TEST(KernelValue, ClassicalKernelIsOne) {
  const KernelSpec spec{AlphaFunction::constant(1.0), 0.0, 0.8};
  EXPECT_EQ(kernel_value(spec, 0.3), 1.0);
  EXPECT_EQ(kernel_value(spec, 1.7), 1.0);
}

TEST(KernelValue, ConstantOrderClosedForm) {
  // (t - s)^(a - 1) / Gamma(a) with a = 1/2, t - s = 1/4 gives 2 / sqrt(pi).
  const KernelSpec spec{AlphaFunction::constant(0.5), 0.0, 1.0};
  EXPECT_NEAR(kernel_value(spec, 0.75), 1.1283791670955125739, 1e-14);
  EXPECT_NEAR(kernel_value(spec, 0.75), 2.0 / std::sqrt(std::numbers::pi), 1e-14);
}

TEST(KernelValue, AffineOrderWithDiscount) {
  // 40-digit reference for alpha(z) = 0.6 + 0.1 z, rho = 0.2, t = 0.8, s = 0.5.
  const KernelSpec spec{AlphaFunction::affine(0.6, 0.1), 0.2, 0.8};
  EXPECT_NEAR(kernel_value(spec, 0.5), 1.1406212596215234199, 1e-13);
}

TEST(KernelValue, SingularityPolicy) {
  const KernelSpec spec{AlphaFunction::constant(0.6), 0.0, 0.8};
  EXPECT_THROW(kernel_value(spec, 0.8 - 1e-10, kError), SingularityError);
  try {
    kernel_value(spec, 0.8);
    FAIL() << "expected SingularityError";
  } catch (const SingularityError& e) {
    EXPECT_EQ(e.s(), 0.8);
    EXPECT_EQ(e.observed_time(), 0.8);
  }

  const SingularityPolicy clamp{1e-8, SingularityPolicy::Mode::ClampToEpsilon};
  const double at_t = kernel_value(spec, 0.8, clamp);
  EXPECT_TRUE(std::isfinite(at_t));
  EXPECT_DOUBLE_EQ(at_t, std::pow(1e-8, -0.4) / std::tgamma(0.6));
}

TEST(KernelValue, RejectsOrderOutsideUnitInterval) {
  // alpha(s - t) = 0.5 + 1.0 * (s - t) hits 0 at s = t - 0.5.
  const KernelSpec spec{AlphaFunction::affine(0.5, 1.0), 0.0, 1.0};
  EXPECT_THROW(kernel_value(spec, 0.4), DomainError);
  EXPECT_NO_THROW(kernel_value(spec, 0.6));
  const KernelSpec above{AlphaFunction::constant(1.2), 0.0, 1.0};
  EXPECT_THROW(kernel_value(above, 0.4), DomainError);
}

TEST(KernelValue, PositiveEverywhere) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> a(0.05, 1.0), rho(0.0, 2.0), s(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const KernelSpec spec{AlphaFunction::constant(a(rng)), rho(rng), 0.25};
    const double si = s(rng);
    if (std::abs(si - 0.25) < 1e-6) continue;
    EXPECT_GT(kernel_value(spec, si), 0.0);
  }
}

TEST(KernelValue, ShiftInvariance) {
  // Dyadic s, t and shifts keep s - t exact, so the value must not move.
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> ticks(-1 << 20, 1 << 20);
  const AlphaFunction forms[] = {AlphaFunction::constant(0.55), AlphaFunction::affine(0.7, 0.05)};
  for (const auto& alpha : forms) {
    for (int i = 0; i < 200; ++i) {
      const double t = std::ldexp(ticks(rng), -20);
      const double s = t - 0.25 - std::ldexp(std::abs(ticks(rng)) % (1 << 19), -20);
      for (double shift : {0.25, 1.0, -2.0, 8.0}) {
        const KernelSpec base{alpha, 0.3, t};
        const KernelSpec moved{alpha, 0.3, t + shift};
        const double a = kernel_value(base, s);
        const double b = kernel_value(moved, s + shift);
        EXPECT_NEAR(a, b, 1e-14 * a);
      }
    }
  }
}

TEST(HCorrection, ClassicalCaseVanishes) {
  const KernelSpec spec{AlphaFunction::constant(1.0), 0.0, 0.8};
  EXPECT_EQ(h_correction(spec, 0.3), 0.0);
  EXPECT_EQ(h_correction(spec, 0.3, kError, HConvention::LogDerivative), 0.0);
}

TEST(HCorrection, ConstantOrderReducesToPowerTerm) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> a(0.05, 1.0), s(-2.0, 3.0), t(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double order = a(rng), ti = t(rng), si = s(rng);
    if (std::abs(si - ti) < 1e-3) continue;
    const KernelSpec spec{AlphaFunction::constant(order), 0.0, ti};
    const double expected = (order - 1.0) / (si - ti);
    EXPECT_NEAR(h_correction(spec, si), expected, 1e-12 * std::max(1.0, std::abs(expected)));
    EXPECT_EQ(h_correction(spec, si, kError, HConvention::PlusRho),
              h_correction(spec, si, kError, HConvention::LogDerivative));
  }
}

TEST(HCorrection, AffineExampleAgainstReferenceDerivative) {
  // d/ds ln g at s = 0.5 for alpha = 0.6 + 0.1 z, rho = 0.2, t = 0.8 (40 digits).
  const KernelSpec spec{AlphaFunction::affine(0.6, 0.1), 0.2, 0.8};
  const double log_derivative = 1.278377369147523342;
  EXPECT_NEAR(h_correction(spec, 0.5, kError, HConvention::LogDerivative), log_derivative, 1e-10);
  EXPECT_NEAR(log_kernel_fd(spec, 0.5, 1e-6), log_derivative, 1e-6);
  // PlusRho flips the sign of the discount term.
  EXPECT_NEAR(h_correction(spec, 0.5, kError, HConvention::PlusRho), log_derivative + 2 * 0.2, 1e-10);
}

TEST(HCorrection, LogDerivativeMatchesFiniteDifferenceProperty) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  while (checked < 1000) {
    const double t = 0.5 + u(rng);
    const double rho = 0.5 * u(rng);
    AlphaFunction alpha;
    switch (checked % 3) {
      case 0: alpha = AlphaFunction::constant(0.1 + 0.9 * u(rng)); break;
      case 1: alpha = AlphaFunction::affine(0.4 + 0.5 * u(rng), 0.1 * (u(rng) - 0.5)); break;
      default: alpha = AlphaFunction::logistic(0.3, 0.95, u(rng) - 0.5, 0.2 + u(rng)); break;
    }
    const KernelSpec spec{alpha, rho, t};
    const double s = t - 1.5 + 3.0 * u(rng);
    if (std::abs(s - t) <= 0.01) continue;
    const double a = alpha.value(s - t);
    if (!(a > 0.0 && a <= 1.0)) continue;
    const double fd = log_kernel_fd(spec, s, 1e-6);
    EXPECT_NEAR(h_correction(spec, s, kError, HConvention::LogDerivative), fd, 1e-5)
        << "s=" << s << " t=" << t;
    ++checked;
  }
}

TEST(HCorrection, ClassicalLimitOnDenseGrid) {
  const KernelSpec spec{AlphaFunction::constant(1.0), 0.0, 0.8};
  const GridSpec grid{0.0, 2.0, 10000};
  for (std::size_t n = 0; n <= grid.N; ++n) {
    const double s = grid.node(n);
    if (std::abs(s - 0.8) < 1e-8) continue;
    ASSERT_NEAR(kernel_value(spec, s), 1.0, 1e-14);
    ASSERT_NEAR(h_correction(spec, s), 0.0, 1e-14);
  }
}

TEST(ValidateGrid, FindsNodesInsideEpsilonBall) {
  const KernelSpec at08{AlphaFunction::constant(0.6), 0.0, 0.8};
  const GridSpec tenths{0.0, 1.0, 10};
  EXPECT_EQ(validate_grid(at08, tenths.nodes()), (std::vector<std::size_t>{8}));

  const KernelSpec far{AlphaFunction::constant(0.6), 0.0, 10.0};
  EXPECT_TRUE(validate_grid(far, tenths.nodes()).empty());

  const KernelSpec half{AlphaFunction::constant(0.6), 0.0, 0.5};
  const GridSpec quarters{0.0, 1.0, 4};
  EXPECT_EQ(validate_grid(half, quarters.nodes()), (std::vector<std::size_t>{2}));

  const GridSpec offset{0.0, 1.0, 3};
  EXPECT_TRUE(validate_grid(half, offset.nodes()).empty());
}

TEST(KernelSpec, Validation) {
  EXPECT_THROW((KernelSpec{AlphaFunction::constant(0.5), -0.1, 0.0}.validate()), DomainError);
  EXPECT_THROW((KernelSpec{AlphaFunction::constant(0.5), 0.0, INFINITY}.validate()), DomainError);
  EXPECT_THROW((SingularityPolicy{0.0}.validate()), DomainError);
}

}  // namespace
}  // namespace fracdyn
