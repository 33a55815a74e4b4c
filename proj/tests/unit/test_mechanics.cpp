#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fracdyn/error.hpp"
#include "fracdyn/mechanics.hpp"

namespace fracdyn {
namespace {

const KernelSpec kClassical{AlphaFunction::constant(1.0), 0.0, 0.8};
const KernelSpec kFractional{AlphaFunction::constant(0.6), 0.0, 0.8};

TEST(Pendulum, PresetPotentials) {
  const PotentialSystem sys = pendulum_preset(0.1, 0.3);
  const std::vector<double> q = {0.7};
  EXPECT_DOUBLE_EQ(sys.potential(q), std::cos(0.7));
  EXPECT_DOUBLE_EQ(sys.potential_gradient(q)[0], -std::sin(0.7));
  EXPECT_DOUBLE_EQ(sys.gamma1_gradient(q)[0], 0.1 * std::cos(0.7));
  EXPECT_DOUBLE_EQ(sys.gamma2_gradient(q)[0], 0.3 * 0.7);
  EXPECT_DOUBLE_EQ(sys.hamiltonian(q, std::vector<double>{2.0}), 2.0 + std::cos(0.7));
}

TEST(HpRhs, DriftIsForceMinusDampedMomentum) {
  const PotentialSystem sys = harmonic_preset(2, 0.0, 0.0);
  const DriftCorrection corr{kFractional, {}, HConvention::PlusRho};
  const HPState state{{1.0, -2.0}, {0.5, 0.25}, {0.5, 0.25}};
  const MechanicsRhs rhs = hp_rhs(sys, state, 0.3, corr);
  const double h = corr.at(0.3);
  EXPECT_NEAR(h, -0.4 / (0.3 - 0.8), 1e-15);
  EXPECT_EQ(rhs.dq, state.v);
  EXPECT_DOUBLE_EQ(rhs.drift[0], -1.0 - 0.5 * h);
  EXPECT_DOUBLE_EQ(rhs.drift[1], 2.0 - 0.25 * h);
}

TEST(HpRhs, IsolatedCorrectionDampsMomentum) {
  // V = 0, no noise, h = 1: the momentum drift is exactly -p.
  PotentialSystem sys = free_particle_preset(3, 0.0, 0.0);
  const KernelSpec unit_h{AlphaFunction::constant(0.5), 0.0, 0.0};
  const DriftCorrection corr{unit_h, {}, HConvention::PlusRho};
  // h = (a - 1) / (s - t) = 1 at s = -0.5.
  ASSERT_DOUBLE_EQ(corr.at(-0.5), 1.0);
  const HPState state{{0.1, 0.2, 0.3}, {1.0, -2.0, 3.0}, {1.0, -2.0, 3.0}};
  const MechanicsRhs rhs = hp_rhs(sys, state, -0.5, corr);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(rhs.drift[i], -state.p[i]);
}

TEST(HpRhs, AgreesWithHamiltonianForm) {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const PotentialSystem sys = harmonic_preset(2, 0.1, 0.3);
  const DriftCorrection corr{KernelSpec{AlphaFunction::affine(0.7, 0.05), 0.1, 0.8}, {},
                             HConvention::PlusRho};
  for (int i = 0; i < 200; ++i) {
    const Vector q = {u(rng), u(rng)}, p = {u(rng), u(rng)};
    const double s = 0.8 + 0.1 + std::abs(u(rng));
    const MechanicsRhs a = hp_rhs(sys, {q, p, p}, s, corr);
    const MechanicsRhs b = hamiltonian_rhs(sys, q, p, s, corr);
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_EQ(a.dq[k], b.dq[k]);
      EXPECT_EQ(a.drift[k], b.drift[k]);
      EXPECT_EQ(a.dW[k], b.dW[k]);
      EXPECT_EQ(a.dL[k], b.dL[k]);
    }
  }
}

TEST(EulerMechanics, FreeParticleConservesMomentumInClassicalLimit) {
  const GridSpec grid{0.0, 1.5, 1000};
  const PotentialSystem sys = free_particle_preset(2, 0.0, 0.0);
  const Trajectory traj = euler_mechanics(sys, {{0.0, 1.0}, {}, {0.5, -0.25}}, grid, kClassical,
                                          sample_wiener(grid, 4), sample_liu(grid, 15.0, 0.0, 1.0));
  EXPECT_EQ(traj.labels, (std::vector<std::string>{"q_1", "q_2", "p_1", "p_2"}));
  for (std::size_t n = 0; n < traj.size(); ++n) {
    ASSERT_EQ(traj.at(n, 2), 0.5);
    ASSERT_EQ(traj.at(n, 3), -0.25);
  }
  EXPECT_NEAR(traj.at(grid.N, 0), 0.75, 1e-12);
}

TEST(EulerMechanics, ClassicalPendulumMatchesHandRolledScheme) {
  const GridSpec grid{0.0, 1.5, 1000};
  const PotentialSystem sys = pendulum_preset(0.1, 0.3);
  const WienerPath w = sample_wiener(grid, 1);
  const LiuPath l = sample_liu(grid, 15.0, 0.0, 1.0);
  const Trajectory traj = euler_mechanics(sys, {{1.0}, {}, {0.0}}, grid, kClassical, w, l);
  EXPECT_EQ(traj.labels, (std::vector<std::string>{"q", "p"}));
  double q = 1.0, p = 0.0;
  const double K = grid.step();
  for (std::size_t n = 0; n < grid.N; ++n) {
    const double qn = q + K * p;
    const double pn = p + K * (std::sin(q) - p * 0.0) + 0.1 * std::cos(q) * w.increments[n] +
                      0.3 * q * l.increments[n];
    q = qn;
    p = pn;
    ASSERT_EQ(traj.at(n + 1, 0), q) << n;
    ASSERT_EQ(traj.at(n + 1, 1), p) << n;
  }
}

TEST(EulerMechanics, HpAndHamiltonianFormsAgree) {
  const GridSpec grid{0.0, 1.5, 1000};
  const PotentialSystem sys = pendulum_preset(0.1, 0.3);
  const WienerPath w = sample_wiener(grid, 1);
  const LiuPath l = sample_liu(grid, 15.0, 0.0, 1.0);
  MechanicsOptions hp;
  hp.form = MechanicsForm::HamiltonPontryagin;
  const Trajectory a = euler_mechanics(sys, {{1.0}, {}, {0.0}}, grid, kFractional, w, l);
  const Trajectory b = euler_mechanics(sys, {{1.0}, {}, {0.0}}, grid, kFractional, w, l, hp);
  EXPECT_EQ(a.states, b.states);
}

TEST(EulerMechanics, VerbatimSchemeDropsMomentumFactor) {
  const GridSpec grid{0.0, 0.5, 10};
  const PotentialSystem sys = free_particle_preset(1, 0.0, 0.0);
  const WienerPath w = sample_wiener(grid, 1);
  const LiuPath l = sample_liu(grid, 0.0, 0.0, 1.0);
  MechanicsOptions verbatim;
  verbatim.scheme = MechanicsScheme::Verbatim;
  const Trajectory traj = euler_mechanics(sys, {{0.0}, {}, {2.0}}, grid, kFractional, w, l, verbatim);
  const DriftCorrection corr{kFractional, {}, HConvention::PlusRho};
  double p = 2.0;
  for (std::size_t n = 0; n < grid.N; ++n) {
    p -= grid.step() * corr.at(grid.node(n));
    EXPECT_NEAR(traj.at(n + 1, 1), p, 1e-14);
  }
}

TEST(EulerMechanics, SingularGridRaises) {
  const GridSpec grid{0.0, 1.0, 10};
  const PotentialSystem sys = pendulum_preset(0.1, 0.3);
  EXPECT_THROW(euler_mechanics(sys, {{1.0}, {}, {0.0}}, grid, kFractional, sample_wiener(grid, 1),
                               sample_liu(grid, 0.0, 0.0, 1.0)),
               SingularityError);
}

TEST(Metric, PolarChristoffelsMatchFiniteDifferences) {
  const MetricSystem polar = polar_metric();
  const std::vector<double> q = {2.0, 0.3};
  const auto analytic = christoffel_symbols(polar, q);
  const auto numeric = christoffel_finite_difference(polar, q);
  EXPECT_DOUBLE_EQ(analytic[(0 * 2 + 1) * 2 + 1], -2.0);
  for (std::size_t i = 0; i < analytic.size(); ++i) EXPECT_NEAR(analytic[i], numeric[i], 1e-8) << i;
}

TEST(Metric, VelocityFormGeodesicTerm) {
  const MetricSystem polar = polar_metric();
  const DriftCorrection none{kClassical, {}, HConvention::PlusRho};
  const std::vector<double> q = {2.0, 0.0}, v = {0.0, 1.0};
  const MechanicsRhs rhs = metric_rhs(polar, q, v, 0.3, none, MetricForm::Velocity);
  EXPECT_DOUBLE_EQ(rhs.drift[0], 2.0);
  EXPECT_DOUBLE_EQ(rhs.drift[1], 0.0);
}

TEST(Metric, MomentumFormRaisesIndices) {
  const MetricSystem polar = polar_metric();
  const DriftCorrection none{kClassical, {}, HConvention::PlusRho};
  const std::vector<double> q = {2.0, 0.0}, p = {0.0, 1.0};
  const MechanicsRhs rhs = metric_rhs(polar, q, p, 0.3, none, MetricForm::Momentum);
  EXPECT_DOUBLE_EQ(rhs.dq[1], 0.25);
  EXPECT_DOUBLE_EQ(rhs.drift[0], 0.125);
  EXPECT_DOUBLE_EQ(rhs.drift[1], 0.0);
}

TEST(Metric, EuclideanMatchesFreeParticle) {
  const GridSpec grid{0.0, 1.5, 301};
  const WienerPath w = sample_wiener(grid, 2);
  const LiuPath l = sample_liu(grid, 1.0, 0.0, 1.0);
  const HPState init{{0.3, -0.1}, {}, {1.0, 0.5}};
  const Trajectory a = euler_mechanics(euclidean_metric(2, 0.1, 0.3), init, grid, kFractional, w, l);
  const Trajectory b = euler_mechanics(free_particle_preset(2, 0.1, 0.3), init, grid, kFractional, w, l);
  ASSERT_EQ(a.states.size(), b.states.size());
  for (std::size_t i = 0; i < a.states.size(); ++i) EXPECT_NEAR(a.states[i], b.states[i], 1e-12);
}

TEST(Metric, RejectsIndefiniteOrAsymmetric) {
  MetricSystem bad = polar_metric();
  EXPECT_THROW(metric_at(bad, std::vector<double>{0.0, 0.0}), MetricError);
  bad.metric = [](std::span<const double>) { return Matrix{1.0, 0.5, 0.0, 1.0}; };
  EXPECT_THROW(metric_at(bad, std::vector<double>{1.0, 0.0}), MetricError);
  bad.metric = [](std::span<const double>) { return Matrix{1.0, 2.0, 2.0, 1.0}; };
  EXPECT_THROW(inverse_metric(bad, std::vector<double>{1.0, 0.0}), MetricError);
}

TEST(Metric, InverseIsInverse) {
  MetricSystem sys = polar_metric();
  sys.metric = [](std::span<const double> q) {
    return Matrix{2.0 + q[0] * q[0], 0.3, 0.3, 1.5};
  };
  const std::vector<double> q = {0.7, 0.0};
  const Matrix g = metric_at(sys, q), inv = inverse_metric(sys, q);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < 2; ++k) sum += g[i * 2 + k] * inv[k * 2 + j];
      EXPECT_NEAR(sum, i == j ? 1.0 : 0.0, 1e-14);
    }
  }
}

}  // namespace
}  // namespace fracdyn
