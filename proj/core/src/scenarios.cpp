#include "fracdyn/scenarios.hpp"

#include "fracdyn/error.hpp"

namespace fracdyn {
namespace {

// Initial state, horizon and seed are not part of the published parameter
// lists; T = 1.5 keeps every node of the N = 1000 grid clear of t = 0.8.
Scenario pendulum_scenario(const std::string& name, const std::string& description, double order,
                           double alpha1, double alpha2) {
  ExperimentConfig c;
  c.name = name;
  c.kind = ExperimentKind::Pendulum;
  c.grid = {0.0, 1.5, 1000};
  c.kernel.spec = {AlphaFunction::constant(order), 0.0, 0.8};
  c.noise = {1, 15.0, 0.0, 1.0};
  c.system.preset = "pendulum";
  c.system.dimension = 1;
  c.system.alpha1 = alpha1;
  c.system.alpha2 = alpha2;
  c.system.q0 = {1.0};
  c.system.p0 = {0.0};
  c.output.prefix = name;
  c.output.plot = true;
  return {name, description, c};
}

}  // namespace

const std::vector<Scenario>& builtin_scenarios() {
  static const std::vector<Scenario> all = {
      pendulum_scenario("pendulum_hybrid_frac", "hybrid noise, alpha=0.6, alpha1=0.1, alpha2=0.3", 0.6, 0.1, 0.3),
      pendulum_scenario("pendulum_hybrid_classical", "hybrid noise, classical alpha=1, alpha1=0.1, alpha2=0.3", 1.0, 0.1, 0.3),
      pendulum_scenario("pendulum_fuzzy_frac", "fuzzy only, alpha=0.6, alpha1=0, alpha2=0.3", 0.6, 0.0, 0.3),
      pendulum_scenario("pendulum_fuzzy_classical", "fuzzy only, classical alpha=1, alpha1=0, alpha2=0.3", 1.0, 0.0, 0.3),
      pendulum_scenario("pendulum_wiener_frac", "Wiener only, alpha=0.6, alpha1=0.1, alpha2=0", 0.6, 0.1, 0.0),
      pendulum_scenario("pendulum_wiener_classical", "Wiener only, classical alpha=1, alpha1=0.1, alpha2=0", 1.0, 0.1, 0.0),
  };
  return all;
}

const Scenario& find_scenario(const std::string& name) {
  for (const Scenario& s : builtin_scenarios()) {
    if (s.name == name) return s;
  }
  throw ConfigError("scenario", "unknown scenario '" + name + "'");
}

}  // namespace fracdyn
