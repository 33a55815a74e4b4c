#include "fracdyn/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fracdyn/csv.hpp"
#include "fracdyn/ensemble.hpp"
#include "fracdyn/error.hpp"
#include "fracdyn/mechanics.hpp"
#include "fracdyn/processes.hpp"
#include "fracdyn/svg.hpp"
#include "json.hpp"

#ifndef FRACDYN_VERSION
#define FRACDYN_VERSION "0.0.0"
#endif

namespace fracdyn {
namespace fs = std::filesystem;

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

fs::path prepare_directory(const ExperimentConfig& config, const RunOptions& options) {
  const fs::path dir = options.output_directory.value_or(fs::path(config.output.directory));
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

bool is_mechanics(ExperimentKind k) {
  return k == ExperimentKind::Hp || k == ExperimentKind::Hamiltonian || k == ExperimentKind::Metric ||
         k == ExperimentKind::Pendulum;
}

PotentialSystem potential_system(const SystemConfig& s) {
  if (s.preset == "pendulum") return pendulum_preset(s.alpha1, s.alpha2);
  if (s.preset == "harmonic") return harmonic_preset(s.dimension, s.alpha1, s.alpha2);
  if (s.preset == "free") return free_particle_preset(s.dimension, s.alpha1, s.alpha2);
  throw ConfigError("system.preset", "unknown potential preset '" + s.preset + "'");
}

MetricSystem metric_system(const SystemConfig& s) {
  if (s.preset == "euclidean") return euclidean_metric(s.dimension, s.alpha1, s.alpha2);
  if (s.preset == "polar") return polar_metric(s.alpha1, s.alpha2);
  throw ConfigError("system.preset", "unknown metric preset '" + s.preset + "'");
}

CoefficientField affine_field(const AffineFieldConfig& f) {
  return CoefficientField::diagonal_affine(f.offset, f.slope);
}

ScalarFunction constant_function(double value) {
  return [value](double) { return value; };
}

std::string to_csv(const Trajectory& traj) {
  std::ostringstream out;
  write_trajectory_csv(out, traj);
  return out.str();
}

// Columns [first, first + count) of the state against the grid index or
// against another column block.
std::string series_csv(const Trajectory& traj, std::size_t x_first, std::size_t y_first,
                       std::size_t count, bool index_axis) {
  std::ostringstream out;
  CsvWriter csv(out);
  std::vector<std::string> header;
  if (index_axis) {
    header.push_back("n");
  } else {
    for (std::size_t i = 0; i < count; ++i) header.push_back(traj.labels[x_first + i]);
  }
  for (std::size_t i = 0; i < count; ++i) header.push_back(traj.labels[y_first + i]);
  csv.header(header);

  std::vector<double> row;
  for (std::size_t n = 0; n < traj.size(); ++n) {
    row.clear();
    if (!index_axis) {
      for (std::size_t i = 0; i < count; ++i) row.push_back(traj.at(n, x_first + i));
    }
    for (std::size_t i = 0; i < count; ++i) row.push_back(traj.at(n, y_first + i));
    if (index_axis) {
      csv.row(n, row);
    } else {
      csv.row(row);
    }
  }
  return out.str();
}

std::string series_svg(const Trajectory& traj, const std::string& title, std::size_t x_first,
                       std::size_t y_first, std::size_t count, bool index_axis) {
  std::vector<PlotSeries> series;
  for (std::size_t i = 0; i < count; ++i) {
    PlotSeries ps;
    for (std::size_t n = 0; n < traj.size(); ++n) {
      ps.x.push_back(index_axis ? static_cast<double>(n) : traj.at(n, x_first + i));
      ps.y.push_back(traj.at(n, y_first + i));
    }
    series.push_back(std::move(ps));
  }
  PlotSpec spec;
  spec.title = title;
  spec.x_label = index_axis ? "n" : traj.labels[x_first];
  spec.y_label = traj.labels[y_first];
  std::ostringstream out;
  write_svg_plot(out, spec, series);
  return out.str();
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

}  // namespace

const char* tool_version() { return FRACDYN_VERSION; }

std::string config_hash(const ExperimentConfig& config) {
  const std::string text = serialize_config(config);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return hex64(h);
}

Trajectory simulate(const ExperimentConfig& config, const NoiseRealization& noise) {
  const GridSpec& grid = config.grid;
  const SystemConfig& s = config.system;
  const KernelConfig& k = config.kernel;
  const WienerPath wiener = sample_wiener(grid, noise.seed);
  const LiuPath liu = sample_liu(grid, noise.z, config.noise.e, config.noise.sigma_liu);

  Trajectory traj;
  switch (config.kind) {
    case ExperimentKind::Pendulum:
    case ExperimentKind::Hp:
    case ExperimentKind::Hamiltonian: {
      MechanicsOptions opts;
      opts.policy = k.policy;
      opts.convention = k.convention;
      opts.scheme = s.scheme == "verbatim" ? MechanicsScheme::Verbatim : MechanicsScheme::Equation;
      opts.form = config.kind == ExperimentKind::Hp ? MechanicsForm::HamiltonPontryagin
                                                     : MechanicsForm::Hamiltonian;
      const HPState initial{s.q0, s.p0, s.p0};
      traj = euler_mechanics(potential_system(s), initial, grid, k.spec, wiener, liu, opts);
      break;
    }
    case ExperimentKind::Metric: {
      MechanicsOptions opts;
      opts.policy = k.policy;
      opts.convention = k.convention;
      const HPState initial{s.q0, {}, s.p0};
      traj = euler_mechanics(metric_system(s), initial, grid, k.spec, wiener, liu, opts);
      break;
    }
    case ExperimentKind::HybridSde: {
      HybridSystem system;
      system.drift = affine_field(s.drift);
      system.diffusion = affine_field(s.diffusion);
      system.fuzzy = affine_field(s.fuzzy);
      system.kernel_alpha = k.spec;
      system.kernel_beta = config.kernel_beta ? config.kernel_beta->spec : k.spec;
      system.kernel_gamma = config.kernel_gamma ? config.kernel_gamma->spec : k.spec;
      system.x0 = s.x0;
      traj = euler_hybrid(system, grid, wiener, liu, {k.policy, s.volterra});
      break;
    }
    case ExperimentKind::StockStochastic:
      traj = stock_model_stochastic(constant_function(s.mu), constant_function(s.sigma), s.alpha1,
                                    s.x0.front(), grid, noise.seed, k.spec.observed_time, k.policy);
      break;
    case ExperimentKind::StockFuzzy:
      traj = stock_model_fuzzy(constant_function(s.mu), constant_function(s.sigma), s.beta1,
                               s.x0.front(), grid, noise.z, config.noise.e, config.noise.sigma_liu,
                               k.spec.observed_time, k.policy);
      break;
  }
  traj.provenance.seed = noise.seed;
  traj.provenance.z = noise.z;
  traj.provenance.system = std::string(to_string(config.kind)) + ":" + traj.provenance.system;
  return traj;
}

void write_manifest(const fs::path& path, const RunManifest& manifest) {
  nlohmann::ordered_json j;
  j["config_hash"] = manifest.config_hash;
  j["tool_version"] = manifest.tool_version;
  j["started_at"] = manifest.started_at;
  j["finished_at"] = manifest.finished_at;
  j["outputs"] = manifest.outputs;
  // Write beside the target and rename so readers never see a partial file.
  fs::path tmp = path;
  tmp += ".tmp";
  write_file(tmp, j.dump(2) + "\n");
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move manifest into place: " + ec.message());
}

RunManifest run(const ExperimentConfig& config, const RunOptions& options) {
  validate_config(config);
  RunManifest manifest;
  manifest.config_hash = config_hash(config);
  manifest.tool_version = tool_version();
  manifest.started_at = utc_now();

  const Trajectory traj = simulate(config, {config.noise.seed, config.noise.z});
  const fs::path dir = prepare_directory(config, options);
  const std::string& prefix = config.output.prefix;

  auto emit = [&](const std::string& name, const std::string& content) {
    write_file(dir / name, content);
    manifest.outputs.push_back(name);
  };

  emit(prefix + ".csv", to_csv(traj));
  if (is_mechanics(config.kind)) {
    const std::size_t n = traj.dimension / 2;
    emit(prefix + "_n_q.csv", series_csv(traj, 0, 0, n, true));
    emit(prefix + "_n_p.csv", series_csv(traj, 0, n, n, true));
    emit(prefix + "_q_p.csv", series_csv(traj, 0, n, n, false));
    if (config.output.plot) {
      emit(prefix + "_n_q.svg", series_svg(traj, config.name + ": (n, q)", 0, 0, n, true));
      emit(prefix + "_n_p.svg", series_svg(traj, config.name + ": (n, p)", 0, n, n, true));
      emit(prefix + "_q_p.svg", series_svg(traj, config.name + ": (q, p)", 0, n, n, false));
    }
  } else if (config.output.plot) {
    emit(prefix + ".svg", series_svg(traj, config.name, 0, 0, traj.dimension, true));
  }

  manifest.finished_at = utc_now();
  write_manifest(dir / (prefix + ".manifest.json"), manifest);
  return manifest;
}

std::vector<NoiseRealization> ensemble_members(const ExperimentConfig& config) {
  std::vector<std::uint64_t> seeds = config.ensemble.seeds;
  if (seeds.empty()) seeds.push_back(config.noise.seed);

  std::vector<double> zs = config.ensemble.z;
  for (double level : config.ensemble.credibility) {
    zs.push_back(config.noise.sigma_liu * std::sqrt(6.0) * std::log(level / (1.0 - level)) /
                 std::numbers::pi);
  }
  if (zs.empty()) zs.push_back(config.noise.z);

  std::vector<NoiseRealization> members;
  members.reserve(seeds.size() * zs.size());
  for (std::uint64_t seed : seeds) {
    for (double z : zs) members.push_back({seed, z});
  }
  std::sort(members.begin(), members.end(), [](const NoiseRealization& a, const NoiseRealization& b) {
    return a.seed != b.seed ? a.seed < b.seed : a.z < b.z;
  });
  return members;
}

RunManifest sweep(const ExperimentConfig& config, const RunOptions& options) {
  validate_config(config);
  if (config.ensemble.empty()) {
    throw ConfigError("ensemble", "sweep requires ensemble.seeds, ensemble.z or ensemble.credibility");
  }
  RunManifest manifest;
  manifest.config_hash = config_hash(config);
  manifest.tool_version = tool_version();
  manifest.started_at = utc_now();

  const std::vector<NoiseRealization> members = ensemble_members(config);
  const bool keep_runs = config.output.per_run;
  struct MemberResult {
    std::vector<double> terminal;
    std::vector<std::string> labels;
    std::string csv;
  };
  const std::vector<MemberResult> results = run_ensemble(
      std::span<const NoiseRealization>(members), config.ensemble.workers,
      [&](const NoiseRealization& m) {
        const Trajectory traj = simulate(config, m);
        const auto last = traj.state(traj.size() - 1);
        return MemberResult{{last.begin(), last.end()}, traj.labels, keep_runs ? to_csv(traj) : ""};
      });

  const fs::path dir = prepare_directory(config, options);
  const std::string& prefix = config.output.prefix;
  const bool by_seed = !config.ensemble.seeds.empty();
  const bool by_z = !config.ensemble.z.empty() || !config.ensemble.credibility.empty();

  std::ostringstream summary;
  CsvWriter csv(summary);
  std::vector<std::string> header;
  if (by_seed) header.push_back("seed");
  if (by_z) header.push_back("z");
  for (const std::string& label : results.front().labels) header.push_back(label);
  csv.header(header);
  for (std::size_t i = 0; i < members.size(); ++i) {
    std::vector<double> values;
    if (by_z) values.push_back(members[i].z);
    values.insert(values.end(), results[i].terminal.begin(), results[i].terminal.end());
    if (by_seed) {
      csv.row(static_cast<std::size_t>(members[i].seed), values);
    } else {
      csv.row(values);
    }
  }
  write_file(dir / (prefix + "_summary.csv"), summary.str());
  manifest.outputs.push_back(prefix + "_summary.csv");

  if (keep_runs) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      std::string name = prefix + "_run" + std::to_string(i) + ".csv";
      write_file(dir / name, results[i].csv);
      manifest.outputs.push_back(std::move(name));
    }
  }

  manifest.finished_at = utc_now();
  write_manifest(dir / (prefix + ".manifest.json"), manifest);
  return manifest;
}

}  // namespace fracdyn
