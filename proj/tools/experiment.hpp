#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace augustin::lab {

enum class Task { Augustin, Classical, Capacity, Fisher, Counterexample, DivergenceDemo, OracleCache };

const char* to_string(Task t);
std::optional<Task> task_from_string(const std::string& name);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct ExperimentConfig {
  Task task = Task::Augustin;
  std::uint64_t seed = 1;
  int n = 8;
  int d = 16;
  std::vector<double> alphas{0.2, 0.4, 0.8, 1.5, 3.0, 5.0};
  int iterations = 60;
  /// Steps for the reference mean; the run also stops at residual 1e-12.
  int reference_iterations = 200;

  // capacity
  double epsilon = 1e-9;

  // fisher
  double rho_lo = 0.1;
  double rho_hi = 0.7;
  double rho_hat = 0.75;
  std::string schedule = "synchronous";  // synchronous | round_robin | random

  // oracle-cache
  int resolution = 60;

  /// Optional JSON problem (augustin / classical / capacity / fisher) that
  /// replaces the random instance.
  std::string problem_file;

  std::string output_dir = "augustin_lab_out";
  int threads = 1;
  bool record_timing = true;
};

/// Per-task defaults (capacity: n=4, d=2, alphas {0.6, 0.8}; demo: {0.2, 0.4}; ...).
ExperimentConfig default_config(Task task);

/// Starts from default_config(task); unknown keys are rejected. Throws nlohmann::json::exception or
/// std::invalid_argument on malformed input.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& cfg);

/// Empty iff the config is runnable.
std::vector<std::string> validate_config(const ExperimentConfig& cfg);

/// AUGUSTIN_LAB_OUT when set and non-empty, otherwise cfg.output_dir.
std::filesystem::path resolve_output_dir(const ExperimentConfig& cfg);

struct CounterexampleValues {
  double image_distance = 0.0;   // d_T(T(V), T(U))
  double scaled_distance = 0.0;  // |1 - 1/a| d_T(V, U)
};
CounterexampleValues counterexample_values();

/// Runs one task, writes its CSV files and manifest.json into the output
/// directory and returns the process exit code.
int run_experiment(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace augustin::lab
