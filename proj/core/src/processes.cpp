#include "fracdyn/processes.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "fracdyn/csv.hpp"
#include "fracdyn/error.hpp"
#include "fracdyn/random.hpp"

namespace fracdyn {
namespace {

const double kSqrt6 = std::sqrt(6.0);

void require_sigma(double sigma) {
  if (!std::isfinite(sigma) || !(sigma > 0.0)) {
    throw DomainError("Liu diffusion sigma must be finite and > 0");
  }
}

LiuPath make_liu(const GridSpec& grid, double z, double drift, double sigma, double credibility,
                 double logit) {
  grid.validate();
  LiuPath path;
  path.grid = grid;
  path.z = z;
  path.drift = drift;
  path.sigma = sigma;
  path.credibility = credibility;
  const double step = grid.step();
  const double increment = drift * step + sigma * step * (kSqrt6 / std::numbers::pi) * logit;
  path.increments.assign(grid.N, increment);
  return path;
}

}  // namespace

std::vector<double> cumulative(std::span<const double> increments) {
  std::vector<double> values(increments.size() + 1, 0.0);
  for (std::size_t k = 0; k < increments.size(); ++k) values[k + 1] = values[k] + increments[k];
  return values;
}

double credibility_level(double z, double sigma) {
  require_sigma(sigma);
  return 1.0 / (1.0 + std::exp(-std::numbers::pi * z / (sigma * kSqrt6)));
}

WienerPath sample_wiener(const GridSpec& grid, std::uint64_t seed) {
  grid.validate();
  WienerPath path;
  path.grid = grid;
  path.seed = seed;
  path.increments.resize(grid.N);
  const double scale = std::sqrt(grid.step());
  NormalSource normal(seed);
  for (double& dw : path.increments) dw = scale * normal.next();
  return path;
}

LiuPath sample_liu(const GridSpec& grid, double z, double drift, double sigma) {
  require_sigma(sigma);
  if (!std::isfinite(z) || !std::isfinite(drift)) throw DomainError("Liu z and drift must be finite");
  // ln(c / (1 - c)) equals pi z / (sigma sqrt 6) exactly; using it directly
  // avoids cancellation in 1 - c for large |z|.
  const double logit = std::numbers::pi * z / (sigma * kSqrt6);
  return make_liu(grid, z, drift, sigma, credibility_level(z, sigma), logit);
}

LiuPath sample_liu_at_level(const GridSpec& grid, double credibility, double drift, double sigma) {
  require_sigma(sigma);
  if (!(credibility > 0.0 && credibility < 1.0)) {
    throw DomainError("credibility level must lie in (0, 1)");
  }
  const double logit = std::log(credibility / (1.0 - credibility));
  const double z = sigma * kSqrt6 * logit / std::numbers::pi;
  return make_liu(grid, z, drift, sigma, credibility, logit);
}

std::vector<double> fractional_weights(const KernelSpec& kernel, const GridSpec& grid,
                                       std::size_t n, const SingularityPolicy& policy) {
  const KernelSpec observed = kernel.at_observed_time(grid.node(n));
  std::vector<double> weights(n);
  for (std::size_t k = 0; k < n; ++k) weights[k] = kernel_value(observed, grid.node(k), policy);
  return weights;
}

std::vector<double> fractional_values(const KernelSpec& kernel, const GridSpec& grid,
                                      std::span<const double> increments,
                                      const SingularityPolicy& policy) {
  grid.validate();
  kernel.validate();
  if (increments.size() != grid.N) {
    throw DomainError("increment count does not match grid.N");
  }
  std::vector<double> values(grid.N + 1, 0.0);
  for (std::size_t n = 1; n <= grid.N; ++n) {
    const std::vector<double> weights = fractional_weights(kernel, grid, n, policy);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += weights[k] * increments[k];
    values[n] = sum;
  }
  return values;
}

FractionalProcessSample fractional_process(const KernelSpec& kernel, const WienerPath& path,
                                           const SingularityPolicy& policy) {
  return {kernel, Driver::Wiener, path.grid,
          fractional_values(kernel, path.grid, path.increments, policy)};
}

FractionalProcessSample fractional_process(const KernelSpec& kernel, const LiuPath& path,
                                           const SingularityPolicy& policy) {
  return {kernel, Driver::Liu, path.grid,
          fractional_values(kernel, path.grid, path.increments, policy)};
}

void write_path_csv(std::ostream& out, const GridSpec& grid, std::span<const double> increments) {
  CsvWriter csv(out);
  csv.header({"n", "s", "increment", "value"});
  double value = 0.0;
  for (std::size_t n = 0; n <= grid.N; ++n) {
    const double inc = n == 0 ? 0.0 : increments[n - 1];
    value += inc;
    csv.row(n, {grid.node(n), inc, value});
  }
}

}  // namespace fracdyn
