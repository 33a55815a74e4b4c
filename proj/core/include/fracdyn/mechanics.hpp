#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fracdyn/integrate.hpp"
#include "fracdyn/kernel.hpp"
#include "fracdyn/processes.hpp"

namespace fracdyn {

using ScalarField = std::function<double(std::span<const double>)>;
using GradientField = std::function<Vector(std::span<const double>)>;

// Lagrangian L(q, v) = |v|^2 / 2 - V(q) perturbed by the noise potentials
// gamma1 (Wiener channel) and gamma2 (Liu channel).
struct PotentialSystem {
  std::size_t dimension = 1;
  ScalarField potential;
  GradientField potential_gradient;
  ScalarField gamma1;
  GradientField gamma1_gradient;
  ScalarField gamma2;
  GradientField gamma2_gradient;
  std::string name;

  // H = |p|^2 / 2 + V(q)
  double hamiltonian(std::span<const double> q, std::span<const double> p) const;
};

// Configuration, velocity and momentum of the Hamilton-Pontryagin system.
struct HPState {
  Vector q;
  Vector v;
  Vector p;
};

// Supplies h(s, t) for a fixed kernel.
struct DriftCorrection {
  KernelSpec kernel;
  SingularityPolicy policy;
  HConvention convention = HConvention::PlusRho;

  double at(double s) const { return h_correction(kernel, s, policy, convention); }
};

// Coefficients of dq = dq ds and dp = drift ds + dW dW(s) + dL dL(s).
struct MechanicsRhs {
  Vector dq;
  Vector drift;
  Vector dW;
  Vector dL;
};

// Hamilton-Pontryagin right-hand side:
//   dq = v ds
//   dp = (dL/dq - p h(s,t)) ds + dgamma1/dq dW + dgamma2/dq dL
MechanicsRhs hp_rhs(const PotentialSystem& system, const HPState& state, double s,
                    const DriftCorrection& correction);

// Hamiltonian form: dq = dH/dp ds, dp = (-dH/dq - p h) ds + noise.
MechanicsRhs hamiltonian_rhs(const PotentialSystem& system, std::span<const double> q,
                             std::span<const double> p, double s, const DriftCorrection& correction);

// V = cos q, gamma1 = alpha1 sin q, gamma2 = alpha2 q^2 / 2 (one degree of freedom).
PotentialSystem pendulum_preset(double alpha1, double alpha2);
// V = |q|^2 / 2 with the pendulum noise potentials applied per coordinate.
PotentialSystem harmonic_preset(std::size_t dimension, double alpha1, double alpha2);
// V = 0 with the pendulum noise potentials applied per coordinate.
PotentialSystem free_particle_preset(std::size_t dimension, double alpha1, double alpha2);

// Row-major n x n matrix.
using Matrix = std::vector<double>;

// Kinetic Lagrangian L = g_ij(q) v^i v^j / 2 with optional noise potentials.
// Christoffel symbols and metric derivatives fall back to central
// differences of the metric when no analytic form is supplied.
struct MetricSystem {
  std::size_t dimension = 1;
  std::function<Matrix(std::span<const double>)> metric;
  // Gamma^i_jk stored at [(i * n + j) * n + k].
  std::function<std::vector<double>(std::span<const double>)> christoffel;
  // d g_kl / d q^i stored at [(i * n + k) * n + l].
  std::function<std::vector<double>(std::span<const double>)> metric_derivative;
  GradientField gamma1_gradient;
  GradientField gamma2_gradient;
  double fd_step = 1e-5;
  std::string name;
};

// Throws MetricError unless g is symmetric positive definite.
Matrix metric_at(const MetricSystem& system, std::span<const double> q);
Matrix inverse_metric(const MetricSystem& system, std::span<const double> q);
std::vector<double> christoffel_symbols(const MetricSystem& system, std::span<const double> q);
std::vector<double> christoffel_finite_difference(const MetricSystem& system,
                                                  std::span<const double> q);
std::vector<double> metric_derivatives(const MetricSystem& system, std::span<const double> q);

enum class MetricForm { Velocity, Momentum };

// Velocity form: dq = v, dv^i = (-Gamma^i_jk v^j v^k + h v^i) ds
//                               + g^ij dgamma1/dq^j dW + g^ij dgamma2/dq^j dL.
// Momentum form: dq^i = g^ij p_j, dp_i = (dg_kl/dq^i p^k p^l / 2 - h p_i) ds
//                               + dgamma1/dq^i dW + dgamma2/dq^i dL,
// with p^k = g^kj p_j.
MechanicsRhs metric_rhs(const MetricSystem& system, std::span<const double> q,
                        std::span<const double> v_or_p, double s, const DriftCorrection& correction,
                        MetricForm form);

MetricSystem euclidean_metric(std::size_t dimension, double alpha1 = 0.0, double alpha2 = 0.0);
// diag(1, r^2) in (r, theta) with analytic Christoffels.
MetricSystem polar_metric(double alpha1 = 0.0, double alpha2 = 0.0);

// Equation: p += K (-dV/dq - h p) + ...
// Verbatim: p += K (-dV/dq - h) + ..., without the
// momentum factor on h.
enum class MechanicsScheme { Equation, Verbatim };
// Which right-hand side drives the potential-system integrator; both agree
// for L = |v|^2 / 2 - V.
enum class MechanicsForm { Hamiltonian, HamiltonPontryagin };

struct MechanicsOptions {
  SingularityPolicy policy;
  HConvention convention = HConvention::PlusRho;
  MechanicsScheme scheme = MechanicsScheme::Equation;
  MechanicsForm form = MechanicsForm::Hamiltonian;
};

// First-order Euler scheme on (q, p):
//   q_{n+1} = q_n + K dq(q_n, p_n)
//   p_{n+1} = p_n + K drift + dW_coeff dW_n + dL_coeff dL_n
// The returned trajectory has dimension 2n, states (q_1..q_n, p_1..p_n).
Trajectory euler_mechanics(const PotentialSystem& system, const HPState& initial,
                           const GridSpec& grid, const KernelSpec& kernel, const WienerPath& wiener,
                           const LiuPath& liu, const MechanicsOptions& options = {});

// Momentum-form metric system; scheme must be Equation.
Trajectory euler_mechanics(const MetricSystem& system, const HPState& initial, const GridSpec& grid,
                           const KernelSpec& kernel, const WienerPath& wiener, const LiuPath& liu,
                           const MechanicsOptions& options = {});

}  // namespace fracdyn
