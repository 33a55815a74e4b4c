// fracdyn: run, sweep and validate generalized fractional hybrid experiments.
//
// Exit codes: 0 success, 2 config error, 3 numeric abort, 4 IO error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fracdyn/config.hpp"
#include "fracdyn/error.hpp"
#include "fracdyn/runner.hpp"
#include "fracdyn/scenarios.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

constexpr const char* kOutputEnv = "FRACDYN_OUTPUT_DIR";

fracdyn::ExperimentConfig load(const std::string& config_path, const std::string& scenario) {
  if (!scenario.empty()) return fracdyn::find_scenario(scenario).config;
  return fracdyn::load_config_file(config_path);
}

fracdyn::RunOptions run_options(const std::string& output_dir) {
  fracdyn::RunOptions options;
  if (!output_dir.empty()) {
    options.output_directory = output_dir;
  } else if (const char* env = std::getenv(kOutputEnv); env && *env) {
    options.output_directory = env;
  }
  return options;
}

void print_manifest(const fracdyn::RunManifest& manifest) {
  for (const auto& file : manifest.outputs) std::cout << file << '\n';
  std::cout << "config hash " << manifest.config_hash << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized fractional hybrid dynamics experiment runner"};
  app.set_version_flag("--version", std::string(fracdyn::tool_version()));
  app.require_subcommand(1);

  std::string config_path, scenario, output_dir;

  auto add_config_args = [&](CLI::App* cmd) {
    auto* path = cmd->add_option("config", config_path, "Experiment config (JSON)");
    auto* scen = cmd->add_option("--scenario", scenario, "Use a built-in scenario instead of a file");
    path->excludes(scen);
    scen->excludes(path);
  };

  CLI::App* run_cmd = app.add_subcommand("run", "Simulate one trajectory and write CSV/SVG outputs");
  add_config_args(run_cmd);
  run_cmd->add_option("-o,--output-dir", output_dir,
                      std::string("Output directory (overrides config and $") + kOutputEnv + ")");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run the ensemble block and write a summary CSV");
  add_config_args(sweep_cmd);
  sweep_cmd->add_option("-o,--output-dir", output_dir,
                        std::string("Output directory (overrides config and $") + kOutputEnv + ")");

  CLI::App* validate_cmd = app.add_subcommand("validate", "Check a config without running it");
  add_config_args(validate_cmd);

  CLI::App* scenarios_cmd = app.add_subcommand("scenarios", "List or export built-in scenarios");
  scenarios_cmd->require_subcommand(1);
  scenarios_cmd->add_subcommand("list", "List built-in scenario names");
  CLI::App* export_cmd = scenarios_cmd->add_subcommand("export", "Print a scenario config");
  std::string export_name, export_file;
  export_cmd->add_option("name", export_name, "Scenario name")->required();
  export_cmd->add_option("-f,--file", export_file, "Write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  auto require_input = [&] {
    if (config_path.empty() && scenario.empty()) {
      throw fracdyn::ConfigError("config", "give a config file or --scenario NAME");
    }
  };

  try {
    if (*run_cmd) {
      require_input();
      print_manifest(fracdyn::run(load(config_path, scenario), run_options(output_dir)));
    } else if (*sweep_cmd) {
      require_input();
      print_manifest(fracdyn::sweep(load(config_path, scenario), run_options(output_dir)));
    } else if (*validate_cmd) {
      require_input();
      const auto config = load(config_path, scenario);
      fracdyn::validate_config(config);
      std::cout << "ok: " << config.name << " (" << fracdyn::to_string(config.kind) << ")\n";
    } else if (*scenarios_cmd) {
      if (scenarios_cmd->got_subcommand("list")) {
        for (const auto& s : fracdyn::builtin_scenarios()) {
          std::cout << s.name << "\t" << s.description << '\n';
        }
      } else {
        const std::string text = fracdyn::serialize_config(fracdyn::find_scenario(export_name).config);
        if (export_file.empty()) {
          std::cout << text;
        } else {
          std::ofstream out(export_file, std::ios::binary);
          if (!out || !(out << text)) throw fracdyn::IoError("cannot write '" + export_file + "'");
        }
      }
    }
  } catch (const fracdyn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const fracdyn::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fracdyn::NonFiniteError& e) {
    std::cerr << "numeric abort: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const fracdyn::Error& e) {
    std::cerr << "numeric abort: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}
