#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracdyn/grid.hpp"
#include "fracdyn/kernel.hpp"
#include "fracdyn/processes.hpp"

namespace fracdyn {

using Vector = std::vector<double>;
using ScalarFunction = std::function<double(double)>;

// Deterministic vector field (s, x) -> R^n.
struct CoefficientField {
  std::size_t dimension = 1;
  std::function<Vector(double, std::span<const double>)> evaluate;

  static CoefficientField zero(std::size_t dimension);
  // Component-wise affine field: out_i = offset_i + slope_i * x_i.
  static CoefficientField diagonal_affine(Vector offset, Vector slope);
  // out_i = f(s) * x_i
  static CoefficientField scaled_state(std::size_t dimension, ScalarFunction f);
};

// dx = a2 g^alpha ds + b2 g^beta dW + c2 g^gamma dL
struct HybridSystem {
  CoefficientField drift;
  CoefficientField diffusion;
  CoefficientField fuzzy;
  KernelSpec kernel_alpha;
  KernelSpec kernel_beta;
  KernelSpec kernel_gamma;
  Vector x0;

  std::size_t dimension() const { return x0.size(); }
  void validate() const;
};

struct Provenance {
  std::uint64_t seed = 0;
  double z = 0.0;
  std::string system;
  std::string scheme;
};

// States on the grid, stored row-major: states[n * dimension + i].
struct Trajectory {
  GridSpec grid;
  std::size_t dimension = 0;
  std::vector<double> states;
  std::vector<std::string> labels;
  Provenance provenance;

  std::size_t size() const { return dimension ? states.size() / dimension : 0; }
  std::span<const double> state(std::size_t n) const {
    return std::span(states).subspan(n * dimension, dimension);
  }
  double at(std::size_t n, std::size_t i) const { return states[n * dimension + i]; }
  // Column i over all grid nodes.
  std::vector<double> component(std::size_t i) const;
};

struct IntegratorOptions {
  SingularityPolicy policy;
  // Re-observe every kernel at the current endpoint and re-weight the whole
  // history each step (O(N^2)). Default keeps each kernel's observed time.
  bool volterra = false;
};

// Left-endpoint quadrature of int_{t0}^{t} f(s) g_t(s) ds on a grid ending at
// t = kernel.observed_time. The cell adjacent to the singular endpoint is
// integrated exactly with f and the order frozen at its left node.
double fractional_integral(const KernelSpec& kernel, const ScalarFunction& f, const GridSpec& grid,
                           const SingularityPolicy& policy = {});

Trajectory euler_hybrid(const HybridSystem& system, const GridSpec& grid, const WienerPath& wiener,
                        const LiuPath& liu, const IntegratorOptions& options = {});

// Fractional Black-Scholes: a = mu x, b = sigma x, alpha = alpha1,
// beta = (1 + alpha1) / 2, rho = 0. Observed time defaults to grid.T.
Trajectory stock_model_stochastic(ScalarFunction mu, ScalarFunction sigma, double alpha1, double x0,
                                  const GridSpec& grid, std::uint64_t seed,
                                  std::optional<double> observed_time = std::nullopt,
                                  const SingularityPolicy& policy = {});

// Fuzzy stock model: a = mu x, c = sigma x, alpha = 1, gamma = beta1, rho = 0.
Trajectory stock_model_fuzzy(ScalarFunction mu, ScalarFunction sigma, double beta1, double x0,
                             const GridSpec& grid, double z, double drift, double sigma_liu,
                             std::optional<double> observed_time = std::nullopt,
                             const SingularityPolicy& policy = {});

// CSV with header `n,s,<labels>`.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace fracdyn
