#include "fracdyn/integrate.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "fracdyn/csv.hpp"
#include "fracdyn/error.hpp"
#include "fracdyn/special.hpp"

namespace fracdyn {
namespace {

bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

Vector evaluate_checked(const CoefficientField& field, const char* name, double s,
                        std::span<const double> x, std::size_t step) {
  Vector out = field.evaluate(s, x);
  if (out.size() != x.size()) {
    throw DomainError(std::string(name) + " coefficient returned wrong dimension");
  }
  if (!all_finite(out)) throw NonFiniteError(std::string(name) + " coefficient is not finite", step);
  return out;
}

void require_same_grid(const GridSpec& grid, const GridSpec& other, const char* what) {
  if (!(grid == other)) throw DomainError(std::string(what) + " grid differs from integration grid");
}

std::vector<std::string> default_labels(std::size_t dimension) {
  if (dimension == 1) return {"x"};
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < dimension; ++i) labels.push_back("x_" + std::to_string(i + 1));
  return labels;
}

std::vector<double> kernel_weights(const KernelSpec& kernel, std::span<const double> nodes,
                                   const SingularityPolicy& policy) {
  std::vector<double> w(nodes.size());
  for (std::size_t n = 0; n < nodes.size(); ++n) w[n] = kernel_value(kernel, nodes[n], policy);
  return w;
}

Trajectory euler_fixed(const HybridSystem& system, const GridSpec& grid, const WienerPath& wiener,
                       const LiuPath& liu, const SingularityPolicy& policy) {
  const std::size_t dim = system.dimension();
  const std::vector<double> nodes = grid.evaluation_nodes();
  const std::vector<double> g_alpha = kernel_weights(system.kernel_alpha, nodes, policy);
  const std::vector<double> g_beta = kernel_weights(system.kernel_beta, nodes, policy);
  const std::vector<double> g_gamma = kernel_weights(system.kernel_gamma, nodes, policy);
  const double step = grid.step();

  Trajectory traj;
  traj.grid = grid;
  traj.dimension = dim;
  traj.states.reserve((grid.N + 1) * dim);
  traj.states.insert(traj.states.end(), system.x0.begin(), system.x0.end());

  Vector x = system.x0;
  Vector next(dim);
  for (std::size_t n = 0; n < grid.N; ++n) {
    const double s = nodes[n];
    const Vector a = evaluate_checked(system.drift, "drift", s, x, n);
    const Vector b = evaluate_checked(system.diffusion, "diffusion", s, x, n);
    const Vector c = evaluate_checked(system.fuzzy, "fuzzy", s, x, n);
    for (std::size_t i = 0; i < dim; ++i) {
      next[i] = x[i] + a[i] * g_alpha[n] * step + b[i] * g_beta[n] * wiener.increments[n] +
                c[i] * g_gamma[n] * liu.increments[n];
    }
    if (!all_finite(next)) throw NonFiniteError("hybrid Euler state is not finite", n + 1);
    x.swap(next);
    traj.states.insert(traj.states.end(), x.begin(), x.end());
  }
  return traj;
}

Trajectory euler_volterra(const HybridSystem& system, const GridSpec& grid, const WienerPath& wiener,
                          const LiuPath& liu, const SingularityPolicy& policy) {
  const std::size_t dim = system.dimension();
  const double step = grid.step();

  Trajectory traj;
  traj.grid = grid;
  traj.dimension = dim;
  traj.states.reserve((grid.N + 1) * dim);
  traj.states.insert(traj.states.end(), system.x0.begin(), system.x0.end());

  // Coefficients at each visited node; they depend only on (s_k, x_k).
  std::vector<Vector> a_hist, b_hist, c_hist;
  a_hist.reserve(grid.N);
  b_hist.reserve(grid.N);
  c_hist.reserve(grid.N);

  for (std::size_t n = 0; n < grid.N; ++n) {
    const double s = grid.node(n);
    const std::span<const double> x = traj.state(n);
    a_hist.push_back(evaluate_checked(system.drift, "drift", s, x, n));
    b_hist.push_back(evaluate_checked(system.diffusion, "diffusion", s, x, n));
    c_hist.push_back(evaluate_checked(system.fuzzy, "fuzzy", s, x, n));

    const double t = grid.node(n + 1);
    const KernelSpec ka = system.kernel_alpha.at_observed_time(t);
    const KernelSpec kb = system.kernel_beta.at_observed_time(t);
    const KernelSpec kc = system.kernel_gamma.at_observed_time(t);
    Vector next = system.x0;
    for (std::size_t k = 0; k <= n; ++k) {
      const double sk = grid.node(k);
      const double wa = kernel_value(ka, sk, policy) * step;
      const double wb = kernel_value(kb, sk, policy) * wiener.increments[k];
      const double wc = kernel_value(kc, sk, policy) * liu.increments[k];
      for (std::size_t i = 0; i < dim; ++i) {
        next[i] += a_hist[k][i] * wa + b_hist[k][i] * wb + c_hist[k][i] * wc;
      }
    }
    if (!all_finite(next)) throw NonFiniteError("Volterra Euler state is not finite", n + 1);
    traj.states.insert(traj.states.end(), next.begin(), next.end());
  }
  return traj;
}

}  // namespace

CoefficientField CoefficientField::zero(std::size_t dimension) {
  return {dimension, [dimension](double, std::span<const double>) { return Vector(dimension, 0.0); }};
}

CoefficientField CoefficientField::diagonal_affine(Vector offset, Vector slope) {
  if (offset.size() != slope.size()) throw DomainError("affine field: offset/slope size mismatch");
  const std::size_t dim = offset.size();
  return {dim, [offset = std::move(offset), slope = std::move(slope)](double, std::span<const double> x) {
            Vector out(offset.size());
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = offset[i] + slope[i] * x[i];
            return out;
          }};
}

CoefficientField CoefficientField::scaled_state(std::size_t dimension, ScalarFunction f) {
  return {dimension, [f = std::move(f)](double s, std::span<const double> x) {
            const double scale = f(s);
            Vector out(x.size());
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = scale * x[i];
            return out;
          }};
}

void HybridSystem::validate() const {
  const std::size_t dim = dimension();
  if (dim == 0) throw DomainError("hybrid system: x0 must not be empty");
  if (!all_finite(x0)) throw DomainError("hybrid system: x0 must be finite");
  for (const CoefficientField* f : {&drift, &diffusion, &fuzzy}) {
    if (f->dimension != dim || !f->evaluate) {
      throw DomainError("hybrid system: coefficient fields must share the dimension of x0");
    }
  }
  kernel_alpha.validate();
  kernel_beta.validate();
  kernel_gamma.validate();
}

std::vector<double> Trajectory::component(std::size_t i) const {
  std::vector<double> out(size());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = at(n, i);
  return out;
}

double fractional_integral(const KernelSpec& kernel, const ScalarFunction& f, const GridSpec& grid,
                           const SingularityPolicy& policy) {
  grid.validate();
  kernel.validate();
  policy.validate();
  const double t = kernel.observed_time;
  if (std::abs(grid.T - t) > 1e-12 * std::max(1.0, std::abs(t))) {
    throw DomainError("fractional_integral: grid must end at the observed time");
  }
  const double step = grid.step();

  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < grid.N; ++k) {
    const double s = grid.node(k);
    const double fs = f(s);
    if (!std::isfinite(fs)) throw NonFiniteError("integrand is not finite", k);
    sum += fs * kernel_value(kernel, s, policy) * step;
  }

  // Last cell [s_{N-1}, t]: int (t - s)^(a-1) ds / Gamma(a) = width^a / Gamma(a + 1).
  const std::size_t last = grid.N - 1;
  const double s = grid.node(last);
  const double fs = f(s);
  if (!std::isfinite(fs)) throw NonFiniteError("integrand is not finite", last);
  const double z = s - t;
  const double a = kernel.alpha.value(z);
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("fractional order outside (0, 1] on the last cell");
  const double width = t - s;
  const double cell = std::exp(a * std::log(width) - kernel.rho * z) / special::gamma(a + 1.0);
  sum += fs * cell;
  return sum;
}

Trajectory euler_hybrid(const HybridSystem& system, const GridSpec& grid, const WienerPath& wiener,
                        const LiuPath& liu, const IntegratorOptions& options) {
  grid.validate();
  system.validate();
  options.policy.validate();
  require_same_grid(grid, wiener.grid, "Wiener path");
  require_same_grid(grid, liu.grid, "Liu path");
  if (wiener.increments.size() != grid.N || liu.increments.size() != grid.N) {
    throw DomainError("path increment count does not match grid.N");
  }

  Trajectory traj = options.volterra ? euler_volterra(system, grid, wiener, liu, options.policy)
                                     : euler_fixed(system, grid, wiener, liu, options.policy);
  traj.labels = default_labels(system.dimension());
  traj.provenance = {wiener.seed, liu.z, "hybrid", options.volterra ? "euler-volterra" : "euler"};
  return traj;
}

Trajectory stock_model_stochastic(ScalarFunction mu, ScalarFunction sigma, double alpha1, double x0,
                                  const GridSpec& grid, std::uint64_t seed,
                                  std::optional<double> observed_time,
                                  const SingularityPolicy& policy) {
  if (!(alpha1 > 0.0 && alpha1 <= 1.0)) throw DomainError("alpha1 must lie in (0, 1]");
  grid.validate();
  const double t = observed_time.value_or(grid.T);
  HybridSystem system;
  system.drift = CoefficientField::scaled_state(1, std::move(mu));
  system.diffusion = CoefficientField::scaled_state(1, std::move(sigma));
  system.fuzzy = CoefficientField::zero(1);
  system.kernel_alpha = {AlphaFunction::constant(alpha1), 0.0, t};
  system.kernel_beta = {AlphaFunction::constant(0.5 * (1.0 + alpha1)), 0.0, t};
  system.kernel_gamma = {AlphaFunction::constant(1.0), 0.0, t};
  system.x0 = {x0};

  const WienerPath wiener = sample_wiener(grid, seed);
  const LiuPath liu = sample_liu(grid, 0.0, 0.0, 1.0);
  Trajectory traj = euler_hybrid(system, grid, wiener, liu, {policy, false});
  traj.provenance.system = "stock_stochastic";
  return traj;
}

Trajectory stock_model_fuzzy(ScalarFunction mu, ScalarFunction sigma, double beta1, double x0,
                             const GridSpec& grid, double z, double drift, double sigma_liu,
                             std::optional<double> observed_time, const SingularityPolicy& policy) {
  if (!(beta1 > 0.0 && beta1 <= 1.0)) throw DomainError("beta1 must lie in (0, 1]");
  grid.validate();
  const double t = observed_time.value_or(grid.T);
  HybridSystem system;
  system.drift = CoefficientField::scaled_state(1, std::move(mu));
  system.diffusion = CoefficientField::zero(1);
  system.fuzzy = CoefficientField::scaled_state(1, std::move(sigma));
  system.kernel_alpha = {AlphaFunction::constant(1.0), 0.0, t};
  system.kernel_beta = {AlphaFunction::constant(1.0), 0.0, t};
  system.kernel_gamma = {AlphaFunction::constant(beta1), 0.0, t};
  system.x0 = {x0};

  WienerPath wiener;
  wiener.grid = grid;
  wiener.increments.assign(grid.N, 0.0);
  const LiuPath liu = sample_liu(grid, z, drift, sigma_liu);
  Trajectory traj = euler_hybrid(system, grid, wiener, liu, {policy, false});
  traj.provenance.system = "stock_fuzzy";
  return traj;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  CsvWriter csv(out);
  std::vector<std::string> header = {"n", "s"};
  header.insert(header.end(), trajectory.labels.begin(), trajectory.labels.end());
  csv.header(header);
  std::vector<double> row(trajectory.dimension + 1);
  for (std::size_t n = 0; n < trajectory.size(); ++n) {
    row[0] = trajectory.grid.node(n);
    const auto state = trajectory.state(n);
    std::copy(state.begin(), state.end(), row.begin() + 1);
    csv.row(n, row);
  }
}

}  // namespace fracdyn
