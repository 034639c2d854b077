#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "duscar/analysis.hpp"
#include "duscar/embedding.hpp"
#include "duscar/sectors.hpp"

namespace duscar {

inline constexpr const char* kVersion = "0.1.0";

enum class Experiment { SPECTRUM, DYNAMICS, MMAP, DUAL_SPECTRUM };
std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& s);

struct DynamicsConfig {
  int t_max = 20;
  int n_random_states = 100;
  std::vector<NamedState> initial_states{NamedState::ZERO, NamedState::PSI1, NamedState::PSI2};
};

struct ExperimentConfig {
  int n_sites = 8;
  int d = 3;
  std::string spec = "example_a";
  std::uint64_t seed = 1;
  double phi = 0.0;
  LayerMode layer_mode = LayerMode::DU1_DU2;
  std::vector<Experiment> experiments{Experiment::SPECTRUM, Experiment::DYNAMICS, Experiment::MMAP,
                                      Experiment::DUAL_SPECTRUM};
  DynamicsConfig dynamics;
  int tau = 4;
  SpectrumMethod spectrum_method = SpectrumMethod::TRANSLATION_SECTORS;
  std::string output_dir = "out";

  bool wants(Experiment e) const;
};

/// Missing keys take their defaults; unknown keys and bad values throw InvalidArgument.
/// A manifest.json written by run_experiments is accepted too (its "config" member is used).
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Defaults for a named projector spec (two_scar gets phi = 0.01).
ExperimentConfig default_config(const std::string& spec_name);

struct ValidationReport {
  std::vector<std::string> failures;
  std::vector<std::string> checks;  // passed checks
  double memory_mb = 0.0;
  double runtime_estimate_s = 0.0;

  bool ok() const { return failures.empty(); }
  nlohmann::json to_json() const;
};

ValidationReport validate_config(const ExperimentConfig& c);

/// Runs every requested experiment and writes the CSV files plus manifest.json into
/// output_dir. Throws InvalidArgument if validation fails.
void run_experiments(const ExperimentConfig& c);

/// 17 significant digits, '.' decimal point, locale independent.
std::string format_double(double x);
/// Writes to path.tmp and renames over path.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace duscar
