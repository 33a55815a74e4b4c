#include "fracdyn/mechanics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracdyn/error.hpp"

namespace fracdyn {
namespace {

Vector zero_gradient(std::span<const double> q) { return Vector(q.size(), 0.0); }

Vector gradient_or_zero(const GradientField& field, std::span<const double> q) {
  return field ? field(q) : zero_gradient(q);
}

// Lower-triangular Cholesky factor of an SPD matrix; throws MetricError.
Matrix cholesky(const Matrix& a, std::size_t n) {
  Matrix l(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) diag -= l[j * n + k] * l[j * n + k];
    if (!(diag > 0.0) || !std::isfinite(diag)) {
      throw MetricError("metric is not positive definite (Cholesky pivot " + std::to_string(j) + ")");
    }
    l[j * n + j] = std::sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) v -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = v / l[j * n + j];
    }
  }
  return l;
}

Matrix inverse_from_cholesky(const Matrix& l, std::size_t n) {
  Matrix inv(n * n, 0.0);
  Vector y(n), x(n);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = 0; i < n; ++i) {
      double v = i == col ? 1.0 : 0.0;
      for (std::size_t k = 0; k < i; ++k) v -= l[i * n + k] * y[k];
      y[i] = v / l[i * n + i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double v = y[ii];
      for (std::size_t k = ii + 1; k < n; ++k) v -= l[k * n + ii] * x[k];
      x[ii] = v / l[ii * n + ii];
    }
    for (std::size_t i = 0; i < n; ++i) inv[i * n + col] = x[i];
  }
  return inv;
}

Vector mat_vec(const Matrix& m, std::span<const double> v, std::size_t n) {
  Vector out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i] += m[i * n + j] * v[j];
  }
  return out;
}

void require_dimension(std::span<const double> v, std::size_t n, const char* what) {
  if (v.size() != n) throw DomainError(std::string(what) + " has wrong dimension");
}

std::vector<std::string> phase_labels(std::size_t n) {
  if (n == 1) return {"q", "p"};
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("q_" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p_" + std::to_string(i + 1));
  return labels;
}

void check_paths(const GridSpec& grid, const WienerPath& wiener, const LiuPath& liu) {
  grid.validate();
  if (!(wiener.grid == grid) || !(liu.grid == grid)) {
    throw DomainError("noise paths must share the integration grid");
  }
  if (wiener.increments.size() != grid.N || liu.increments.size() != grid.N) {
    throw DomainError("path increment count does not match grid.N");
  }
}

bool finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

// Shared Euler loop over (q, p); rhs(s, q, p) returns the coefficients.
template <class Rhs>
Trajectory euler_phase_space(std::size_t dim, const HPState& initial, const GridSpec& grid,
                             const WienerPath& wiener, const LiuPath& liu, Rhs&& rhs) {
  require_dimension(initial.q, dim, "initial q");
  require_dimension(initial.p, dim, "initial p");
  if (!finite(initial.q) || !finite(initial.p)) throw DomainError("initial state must be finite");

  const double step = grid.step();
  Trajectory traj;
  traj.grid = grid;
  traj.dimension = 2 * dim;
  traj.labels = phase_labels(dim);
  traj.states.reserve((grid.N + 1) * 2 * dim);

  Vector q = initial.q, p = initial.p;
  Vector q_next(dim), p_next(dim);
  auto push = [&] {
    traj.states.insert(traj.states.end(), q.begin(), q.end());
    traj.states.insert(traj.states.end(), p.begin(), p.end());
  };
  push();
  for (std::size_t n = 0; n < grid.N; ++n) {
    const MechanicsRhs c = rhs(grid.node(n), q, p);
    for (std::size_t i = 0; i < dim; ++i) {
      q_next[i] = q[i] + step * c.dq[i];
      p_next[i] = p[i] + step * c.drift[i] + c.dW[i] * wiener.increments[n] +
                  c.dL[i] * liu.increments[n];
    }
    if (!finite(q_next) || !finite(p_next)) {
      throw NonFiniteError("mechanics Euler state is not finite", n + 1);
    }
    q.swap(q_next);
    p.swap(p_next);
    push();
  }
  traj.provenance = {wiener.seed, liu.z, "", ""};
  return traj;
}

}  // namespace

double PotentialSystem::hamiltonian(std::span<const double> q, std::span<const double> p) const {
  double kinetic = 0.0;
  for (double pi : p) kinetic += 0.5 * pi * pi;
  return kinetic + potential(q);
}

MechanicsRhs hp_rhs(const PotentialSystem& system, const HPState& state, double s,
                    const DriftCorrection& correction) {
  const std::size_t n = system.dimension;
  require_dimension(state.q, n, "q");
  require_dimension(state.v, n, "v");
  require_dimension(state.p, n, "p");
  const double h = correction.at(s);
  const Vector grad_v = system.potential_gradient(state.q);

  MechanicsRhs out;
  out.dq = state.v;
  out.drift.resize(n);
  // dL/dq = -dV/dq for L = |v|^2 / 2 - V(q).
  for (std::size_t i = 0; i < n; ++i) out.drift[i] = -grad_v[i] - state.p[i] * h;
  out.dW = gradient_or_zero(system.gamma1_gradient, state.q);
  out.dL = gradient_or_zero(system.gamma2_gradient, state.q);
  return out;
}

MechanicsRhs hamiltonian_rhs(const PotentialSystem& system, std::span<const double> q,
                             std::span<const double> p, double s, const DriftCorrection& correction) {
  const std::size_t n = system.dimension;
  require_dimension(q, n, "q");
  require_dimension(p, n, "p");
  const double h = correction.at(s);
  const Vector grad_v = system.potential_gradient(q);

  MechanicsRhs out;
  // dH/dp = p and -dH/dq = -dV/dq for H = |p|^2 / 2 + V(q).
  out.dq.assign(p.begin(), p.end());
  out.drift.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.drift[i] = -grad_v[i] - p[i] * h;
  out.dW = gradient_or_zero(system.gamma1_gradient, q);
  out.dL = gradient_or_zero(system.gamma2_gradient, q);
  return out;
}

namespace {

// Per-coordinate noise potentials gamma1 = alpha1 sum sin q_i and
// gamma2 = alpha2 |q|^2 / 2 shared by the potential presets.
void attach_noise(PotentialSystem& sys, double alpha1, double alpha2) {
  sys.gamma1 = [alpha1](std::span<const double> q) {
    double sum = 0.0;
    for (double x : q) sum += std::sin(x);
    return alpha1 * sum;
  };
  sys.gamma1_gradient = [alpha1](std::span<const double> q) {
    Vector g(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) g[i] = alpha1 * std::cos(q[i]);
    return g;
  };
  sys.gamma2 = [alpha2](std::span<const double> q) {
    double sum = 0.0;
    for (double x : q) sum += x * x;
    return 0.5 * alpha2 * sum;
  };
  sys.gamma2_gradient = [alpha2](std::span<const double> q) {
    Vector g(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) g[i] = alpha2 * q[i];
    return g;
  };
}

}  // namespace

PotentialSystem pendulum_preset(double alpha1, double alpha2) {
  PotentialSystem sys;
  sys.dimension = 1;
  sys.name = "pendulum";
  sys.potential = [](std::span<const double> q) { return std::cos(q[0]); };
  sys.potential_gradient = [](std::span<const double> q) { return Vector{-std::sin(q[0])}; };
  attach_noise(sys, alpha1, alpha2);
  return sys;
}

PotentialSystem harmonic_preset(std::size_t dimension, double alpha1, double alpha2) {
  PotentialSystem sys;
  sys.dimension = dimension;
  sys.name = "harmonic";
  sys.potential = [](std::span<const double> q) {
    double sum = 0.0;
    for (double x : q) sum += 0.5 * x * x;
    return sum;
  };
  sys.potential_gradient = [](std::span<const double> q) { return Vector(q.begin(), q.end()); };
  attach_noise(sys, alpha1, alpha2);
  return sys;
}

PotentialSystem free_particle_preset(std::size_t dimension, double alpha1, double alpha2) {
  PotentialSystem sys;
  sys.dimension = dimension;
  sys.name = "free";
  sys.potential = [](std::span<const double>) { return 0.0; };
  sys.potential_gradient = [](std::span<const double> q) { return Vector(q.size(), 0.0); };
  attach_noise(sys, alpha1, alpha2);
  return sys;
}

Matrix metric_at(const MetricSystem& system, std::span<const double> q) {
  const std::size_t n = system.dimension;
  require_dimension(q, n, "q");
  Matrix g = system.metric(q);
  if (g.size() != n * n) throw MetricError("metric returned wrong size");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = g[i * n + j], b = g[j * n + i];
      if (std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)})) {
        throw MetricError("metric is not symmetric");
      }
    }
  }
  cholesky(g, n);
  return g;
}

Matrix inverse_metric(const MetricSystem& system, std::span<const double> q) {
  const std::size_t n = system.dimension;
  const Matrix g = metric_at(system, q);
  return inverse_from_cholesky(cholesky(g, n), n);
}

std::vector<double> metric_derivatives(const MetricSystem& system, std::span<const double> q) {
  const std::size_t n = system.dimension;
  if (system.metric_derivative) return system.metric_derivative(q);
  std::vector<double> d(n * n * n);
  Vector shifted(q.begin(), q.end());
  const double h = system.fd_step;
  for (std::size_t i = 0; i < n; ++i) {
    shifted[i] = q[i] + h;
    const Matrix plus = system.metric(shifted);
    shifted[i] = q[i] - h;
    const Matrix minus = system.metric(shifted);
    shifted[i] = q[i];
    for (std::size_t kl = 0; kl < n * n; ++kl) d[i * n * n + kl] = (plus[kl] - minus[kl]) / (2.0 * h);
  }
  return d;
}

std::vector<double> christoffel_finite_difference(const MetricSystem& system,
                                                  std::span<const double> q) {
  const std::size_t n = system.dimension;
  const Matrix inv = inverse_metric(system, q);
  MetricSystem numeric = system;
  numeric.metric_derivative = nullptr;
  const std::vector<double> dg = metric_derivatives(numeric, q);
  auto d = [&](std::size_t m, std::size_t a, std::size_t b) { return dg[(m * n + a) * n + b]; };

  std::vector<double> gamma(n * n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        double sum = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
          sum += inv[i * n + l] * (d(j, l, k) + d(k, l, j) - d(l, j, k));
        }
        gamma[(i * n + j) * n + k] = 0.5 * sum;
      }
    }
  }
  // Enforce symmetry in the lower indices.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const double avg = 0.5 * (gamma[(i * n + j) * n + k] + gamma[(i * n + k) * n + j]);
        gamma[(i * n + j) * n + k] = avg;
        gamma[(i * n + k) * n + j] = avg;
      }
    }
  }
  return gamma;
}

std::vector<double> christoffel_symbols(const MetricSystem& system, std::span<const double> q) {
  if (system.christoffel) return system.christoffel(q);
  return christoffel_finite_difference(system, q);
}

MechanicsRhs metric_rhs(const MetricSystem& system, std::span<const double> q,
                        std::span<const double> v_or_p, double s, const DriftCorrection& correction,
                        MetricForm form) {
  const std::size_t n = system.dimension;
  require_dimension(q, n, "q");
  require_dimension(v_or_p, n, form == MetricForm::Velocity ? "v" : "p");
  const Matrix inv = inverse_metric(system, q);
  const double h = correction.at(s);
  const Vector dgamma1 = gradient_or_zero(system.gamma1_gradient, q);
  const Vector dgamma2 = gradient_or_zero(system.gamma2_gradient, q);

  MechanicsRhs out;
  out.drift.assign(n, 0.0);
  if (form == MetricForm::Velocity) {
    const std::vector<double> gamma = christoffel_symbols(system, q);
    out.dq.assign(v_or_p.begin(), v_or_p.end());
    for (std::size_t i = 0; i < n; ++i) {
      double geodesic = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          geodesic += gamma[(i * n + j) * n + k] * v_or_p[j] * v_or_p[k];
        }
      }
      out.drift[i] = -(geodesic - h * v_or_p[i]);
    }
    out.dW = mat_vec(inv, dgamma1, n);
    out.dL = mat_vec(inv, dgamma2, n);
  } else {
    const std::vector<double> dg = metric_derivatives(system, q);
    const Vector raised = mat_vec(inv, v_or_p, n);
    out.dq = raised;
    for (std::size_t i = 0; i < n; ++i) {
      double quad = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) quad += dg[(i * n + k) * n + l] * raised[k] * raised[l];
      }
      out.drift[i] = 0.5 * quad - h * v_or_p[i];
    }
    out.dW = dgamma1;
    out.dL = dgamma2;
  }
  return out;
}

MetricSystem euclidean_metric(std::size_t dimension, double alpha1, double alpha2) {
  MetricSystem sys;
  sys.dimension = dimension;
  sys.name = "euclidean";
  sys.metric = [dimension](std::span<const double>) {
    Matrix g(dimension * dimension, 0.0);
    for (std::size_t i = 0; i < dimension; ++i) g[i * dimension + i] = 1.0;
    return g;
  };
  sys.christoffel = [dimension](std::span<const double>) {
    return std::vector<double>(dimension * dimension * dimension, 0.0);
  };
  sys.metric_derivative = sys.christoffel;
  PotentialSystem noise = free_particle_preset(dimension, alpha1, alpha2);
  sys.gamma1_gradient = noise.gamma1_gradient;
  sys.gamma2_gradient = noise.gamma2_gradient;
  return sys;
}

MetricSystem polar_metric(double alpha1, double alpha2) {
  MetricSystem sys;
  sys.dimension = 2;
  sys.name = "polar";
  sys.metric = [](std::span<const double> q) { return Matrix{1.0, 0.0, 0.0, q[0] * q[0]}; };
  sys.christoffel = [](std::span<const double> q) {
    const double r = q[0];
    std::vector<double> g(8, 0.0);
    g[(0 * 2 + 1) * 2 + 1] = -r;       // Gamma^r_{theta theta}
    g[(1 * 2 + 0) * 2 + 1] = 1.0 / r;  // Gamma^theta_{r theta}
    g[(1 * 2 + 1) * 2 + 0] = 1.0 / r;
    return g;
  };
  sys.metric_derivative = [](std::span<const double> q) {
    std::vector<double> d(8, 0.0);
    d[(0 * 2 + 1) * 2 + 1] = 2.0 * q[0];  // d g_{theta theta} / dr
    return d;
  };
  PotentialSystem noise = free_particle_preset(2, alpha1, alpha2);
  sys.gamma1_gradient = noise.gamma1_gradient;
  sys.gamma2_gradient = noise.gamma2_gradient;
  return sys;
}

Trajectory euler_mechanics(const PotentialSystem& system, const HPState& initial,
                           const GridSpec& grid, const KernelSpec& kernel, const WienerPath& wiener,
                           const LiuPath& liu, const MechanicsOptions& options) {
  check_paths(grid, wiener, liu);
  kernel.validate();
  options.policy.validate();
  const DriftCorrection correction{kernel, options.policy, options.convention};
  const std::size_t dim = system.dimension;

  Trajectory traj = euler_phase_space(
      dim, initial, grid, wiener, liu,
      [&](double s, const Vector& q, const Vector& p) {
        if (options.scheme == MechanicsScheme::Verbatim) {
          MechanicsRhs c = hamiltonian_rhs(system, q, p, s, correction);
          const double h = correction.at(s);
          const Vector grad_v = system.potential_gradient(q);
          for (std::size_t i = 0; i < dim; ++i) c.drift[i] = -grad_v[i] - h;
          return c;
        }
        if (options.form == MechanicsForm::HamiltonPontryagin) {
          // Legendre map v = dH/dp = p for the hyperregular Lagrangian.
          return hp_rhs(system, HPState{q, p, p}, s, correction);
        }
        return hamiltonian_rhs(system, q, p, s, correction);
      });
  traj.provenance.system = system.name;
  traj.provenance.scheme = options.scheme == MechanicsScheme::Verbatim ? "euler-verbatim" : "euler";
  return traj;
}

Trajectory euler_mechanics(const MetricSystem& system, const HPState& initial, const GridSpec& grid,
                           const KernelSpec& kernel, const WienerPath& wiener, const LiuPath& liu,
                           const MechanicsOptions& options) {
  if (options.scheme != MechanicsScheme::Equation) {
    throw DomainError("metric systems only support the equation scheme");
  }
  check_paths(grid, wiener, liu);
  kernel.validate();
  options.policy.validate();
  const DriftCorrection correction{kernel, options.policy, options.convention};
  Trajectory traj = euler_phase_space(
      system.dimension, initial, grid, wiener, liu, [&](double s, const Vector& q, const Vector& p) {
        return metric_rhs(system, q, p, s, correction, MetricForm::Momentum);
      });
  traj.provenance.system = system.name;
  traj.provenance.scheme = "euler";
  return traj;
}

}  // namespace fracdyn
