#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "sgfem/config.hpp"
#include "sgfem/runner.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

int do_validate(const std::string& path) {
  try {
    sgfem::load_config(path);
  } catch (const sgfem::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfigError;
  }
  std::printf("%s: valid\n", path.c_str());
  return 0;
}

int do_run(const std::string& path, const sgfem::RunOptions& options) {
  sgfem::RunConfig config;
  try {
    config = sgfem::load_config(path);
  } catch (const sgfem::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfigError;
  }
  try {
    const sgfem::RunArtifacts artifacts = sgfem::run(config, options);
    std::printf("run complete, artifacts in %s\n",
                artifacts.output_dir.string().c_str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "runtime failure: %s\n", e.what());
    return kExitRuntimeError;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic nonlinear plane-stress analysis driver"};
  app.require_subcommand(1);

  std::string config_path;
  sgfem::RunOptions options;

  CLI::App* run_cmd = app.add_subcommand("run", "execute a run configuration");
  run_cmd->add_option("config", config_path, "configuration file (JSON)")
      ->required();
  run_cmd->add_option("--workers", options.workers,
                      "worker threads for sample-parallel methods");
  run_cmd->add_option("--output-dir", options.output_dir_override,
                      "override the configured output directory");
  run_cmd->add_flag("--long", options.long_mode,
                    "run Monte Carlo with 10^6 samples");

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "check a configuration file");
  validate_cmd->add_option("config", config_path, "configuration file (JSON)")
      ->required();

  CLI::App* version_cmd = app.add_subcommand("version", "print the version");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand(version_cmd)) {
    std::printf("sgfem %s\n", kVersion);
    return 0;
  }
  if (app.got_subcommand(validate_cmd)) return do_validate(config_path);
  return do_run(config_path, options);
}
