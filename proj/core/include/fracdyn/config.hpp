#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracdyn/grid.hpp"
#include "fracdyn/kernel.hpp"

namespace fracdyn {

enum class ExperimentKind { HybridSde, StockStochastic, StockFuzzy, Hp, Hamiltonian, Metric, Pendulum };

std::string_view to_string(ExperimentKind kind);

struct KernelConfig {
  KernelSpec spec;
  HConvention convention = HConvention::PlusRho;
  SingularityPolicy policy;

  bool operator==(const KernelConfig&) const = default;
};

struct NoiseConfig {
  std::uint64_t seed = 1;
  double z = 0.0;
  double e = 0.0;
  double sigma_liu = 1.0;

  bool operator==(const NoiseConfig&) const = default;
};

// Component-wise affine coefficient: offset_i + slope_i * x_i.
struct AffineFieldConfig {
  std::vector<double> offset;
  std::vector<double> slope;

  bool operator==(const AffineFieldConfig&) const = default;
};

// Union of the system parameters of every experiment kind; only the fields
// relevant to the kind are read and written.
struct SystemConfig {
  std::string preset;
  std::size_t dimension = 1;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  std::vector<double> q0;
  std::vector<double> p0;
  std::string scheme = "equation";

  // hybrid_sde
  std::vector<double> x0;
  AffineFieldConfig drift;
  AffineFieldConfig diffusion;
  AffineFieldConfig fuzzy;
  bool volterra = false;

  // stock_stochastic / stock_fuzzy (x0 holds the single initial price)
  double mu = 0.0;
  double sigma = 0.0;
  double beta1 = 1.0;

  bool operator==(const SystemConfig&) const = default;
};

struct OutputConfig {
  std::string directory = "out";
  std::string prefix;
  bool plot = false;
  bool per_run = false;

  bool operator==(const OutputConfig&) const = default;
};

struct EnsembleConfig {
  std::vector<std::uint64_t> seeds;
  std::vector<double> z;
  std::vector<double> credibility;
  std::size_t workers = 1;

  bool empty() const { return seeds.empty() && z.empty() && credibility.empty(); }
  bool operator==(const EnsembleConfig&) const = default;
};

struct ExperimentConfig {
  std::string name = "run";
  ExperimentKind kind = ExperimentKind::Pendulum;
  GridSpec grid;
  KernelConfig kernel;
  // hybrid_sde only; unset means "same as kernel".
  std::optional<KernelConfig> kernel_beta;
  std::optional<KernelConfig> kernel_gamma;
  NoiseConfig noise;
  SystemConfig system;
  OutputConfig output;
  EnsembleConfig ensemble;

  bool operator==(const ExperimentConfig&) const = default;
};

// Parses JSON text. Throws ConfigError naming the offending field, e.g.
// "grid.N", for missing, mistyped, unknown or out-of-range entries.
ExperimentConfig parse_config(std::string_view text);

// Canonical JSON text; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

// Checks every statically checkable invariant: grid, kernel parameters,
// order range and singularities on the evaluation nodes, Liu sigma,
// dimensions, metric positive-definiteness at q0, ensemble lists.
void validate_config(const ExperimentConfig& config);

ExperimentConfig load_config_file(const std::string& path);

}  // namespace fracdyn
