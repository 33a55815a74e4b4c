#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fracdyn/config.hpp"
#include "fracdyn/integrate.hpp"

namespace fracdyn {

const char* tool_version();

struct RunManifest {
  std::string config_hash;
  std::string tool_version;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;
};

struct RunOptions {
  // Replaces config.output.directory when set.
  std::optional<std::filesystem::path> output_directory;
};

// One ensemble member: the Wiener seed and the Liu realization z.
struct NoiseRealization {
  std::uint64_t seed = 0;
  double z = 0.0;
};

// Simulates one realization of a validated config.
Trajectory simulate(const ExperimentConfig& config, const NoiseRealization& noise);

// 64-bit FNV-1a of the canonical config text, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

// Validates, simulates with config.noise and writes <prefix>.csv (plus the
// (n,q), (n,p), (q,p) series for mechanics kinds), SVG plots when
// output.plot is set, and <prefix>.manifest.json last.
RunManifest run(const ExperimentConfig& config, const RunOptions& options = {});

// Ensemble members in canonical order: seeds (or noise.seed) crossed with z
// values (or credibility levels mapped to z, or noise.z), sorted by (seed, z).
std::vector<NoiseRealization> ensemble_members(const ExperimentConfig& config);

// Runs every member on ensemble.workers threads and writes
// <prefix>_summary.csv with one row of terminal states per member.
RunManifest sweep(const ExperimentConfig& config, const RunOptions& options = {});

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

}  // namespace fracdyn
