// duscar: run | validate | gen-config
//
// Exit codes: 0 success, 2 config error, 3 numerical validation failure.
// Errors go to stderr as a single JSON object.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "duscar/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int report_error(const std::string& kind, const std::string& message, int code) {
  const nlohmann::json err = {{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
  std::cerr << err.dump() << '\n';
  return code;
}

void apply_thread_cap() {
  const char* env = std::getenv("DUSCAR_THREADS");
  if (!env || !*env) return;
  const int n = std::atoi(env);
  if (n < 1) throw duscar::InvalidArgument("DUSCAR_THREADS must be a positive integer");
  omp_set_num_threads(n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual-unitary brickwork circuits with embedded many-body scars"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the experiments in a config (or manifest) file");
  run->add_option("config", config_path, "config JSON")->required();

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Dry-run checks for a config file");
  validate->add_option("config", validate_path, "config JSON")->required();

  std::string spec_name;
  std::string out_path;
  auto* gen = app.add_subcommand("gen-config", "Print a default config for a projector spec");
  gen->add_option("spec", spec_name, "example_a | example_b | two_scar | unconstrained")->required();
  gen->add_option("-o,--output", out_path, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report_error("usage", e.what(), kExitConfig);
  }

  try {
    apply_thread_cap();
    if (*run) {
      const auto cfg = duscar::load_config(config_path);
      duscar::run_experiments(cfg);
      std::cout << "wrote " << (std::filesystem::path(cfg.output_dir) / "manifest.json").string() << '\n';
    } else if (*validate) {
      const auto report = duscar::validate_config(duscar::load_config(validate_path));
      std::cout << report.to_json().dump(2) << '\n';
      return report.ok() ? 0 : kExitConfig;
    } else if (*gen) {
      const std::string text = duscar::config_to_json(duscar::default_config(spec_name)).dump(2) + "\n";
      if (out_path.empty()) std::cout << text;
      else duscar::write_file_atomic(out_path, text);
    }
  } catch (const duscar::InvalidArgument& e) {
    return report_error("config", e.what(), kExitConfig);
  } catch (const duscar::NumericalError& e) {
    return report_error("numerical", e.what(), kExitNumerical);
  } catch (const std::filesystem::filesystem_error& e) {
    return report_error("io", e.what(), kExitConfig);
  }
  return 0;
}
