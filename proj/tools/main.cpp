#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "experiment.hpp"

namespace lab = augustin::lab;

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::vector<double> alphas;
  std::optional<int> iters;
  std::optional<std::string> out;
  std::optional<int> threads;
  std::optional<int> n;
  std::optional<int> d;
  std::optional<std::string> schedule;
  std::optional<int> resolution;
  std::optional<double> epsilon;
  std::optional<std::string> problem;
  bool no_timing = false;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file");
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--alpha", f.alphas, "order(s) alpha")->delimiter(',');
  cmd->add_option("--iters", f.iters, "iteration budget");
  cmd->add_option("--out", f.out, "output directory (AUGUSTIN_LAB_OUT wins when set)");
  cmd->add_option("--threads", f.threads, "worker threads (default 1)");
  cmd->add_option("--n", f.n, "number of states / buyers");
  cmd->add_option("--d", f.d, "dimension / number of goods");
  cmd->add_option("--schedule", f.schedule, "fisher: synchronous | round_robin | random");
  cmd->add_option("--resolution", f.resolution, "oracle grid resolution");
  cmd->add_option("--epsilon", f.epsilon, "capacity oracle accuracy");
  cmd->add_option("--problem", f.problem, "JSON problem file");
  cmd->add_flag("--no-timing", f.no_timing, "write 0 for wall times (byte-reproducible output)");
}

lab::ExperimentConfig build_config(const std::string& task, const Flags& f) {
  nlohmann::json j = nlohmann::json::object();
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw std::invalid_argument("cannot open config " + f.config);
    j = nlohmann::json::parse(in);
  }
  j["task"] = task;
  lab::ExperimentConfig cfg = lab::config_from_json(j);
  if (f.seed) cfg.seed = *f.seed;
  if (!f.alphas.empty()) cfg.alphas = f.alphas;
  if (f.iters) cfg.iterations = *f.iters;
  if (f.out) cfg.output_dir = *f.out;
  if (f.threads) cfg.threads = *f.threads;
  if (f.n) cfg.n = *f.n;
  if (f.d) cfg.d = *f.d;
  if (f.schedule) cfg.schedule = *f.schedule;
  if (f.resolution) cfg.resolution = *f.resolution;
  if (f.epsilon) cfg.epsilon = *f.epsilon;
  if (f.problem) cfg.problem_file = *f.problem;
  if (f.no_timing) cfg.record_timing = false;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Petz-Augustin mean, Petz capacity and Fisher market experiments"};
  app.require_subcommand(1);
  Flags flags;
  for (const char* name : {"augustin", "classical", "capacity", "fisher", "counterexample",
                           "divergence-demo", "oracle-cache"}) {
    add_flags(app.add_subcommand(name), flags);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lab::kExitConfig;
  }

  const std::string task = app.get_subcommands().front()->get_name();
  lab::ExperimentConfig cfg;
  try {
    cfg = build_config(task, flags);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return lab::kExitConfig;
  }
  return lab::run_experiment(cfg, std::cout);
}
