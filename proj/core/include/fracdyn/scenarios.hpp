#pragma once

#include <string>
#include <vector>

#include "fracdyn/config.hpp"

namespace fracdyn {

struct Scenario {
  std::string name;
  std::string description;
  ExperimentConfig config;
};

// The six shipped pendulum scenarios: orders {0.6, 1} crossed with the
// perturbation regimes (alpha1, alpha2) in {(0.1, 0.3), (0, 0.3), (0.1, 0)},
// observed time 0.8, fuzzy realization z = 15, N = 1000.
const std::vector<Scenario>& builtin_scenarios();

// Throws ConfigError("scenario", ...) for an unknown name.
const Scenario& find_scenario(const std::string& name);

}  // namespace fracdyn
