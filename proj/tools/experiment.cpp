#include "experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "augustin/augustin.hpp"
#include "augustin/capacity.hpp"
#include "augustin/error.hpp"
#include "augustin/fisher.hpp"
#include "augustin/hashing.hpp"
#include "augustin/json_io.hpp"
#include "augustin/oracles.hpp"
#include "augustin/parallel.hpp"

namespace augustin::lab {

using nlohmann::json;
using augustin::to_json;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string alpha_tag(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", alpha);
  return buf;
}

// Collects written files for the manifest.
class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, const std::string& content) {
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
    out << content;
    files_.push_back({name, git_blob_hash(content), content.size()});
  }

  void write_manifest(const ExperimentConfig& cfg, const json& summary, const json& timings,
                      int exit_code) const {
    json files = json::array();
    for (const auto& f : files_) {
      files.push_back({{"path", f.name}, {"git_blob", f.hash}, {"bytes", f.bytes}});
    }
    json manifest = {{"tool", "augustin-lab"},   {"version", "0.1.0"},
                     {"config", to_json(cfg)},   {"files", files},
                     {"summary", summary},       {"wall_time_ms", timings},
                     {"exit_code", exit_code}};
    std::ofstream out(dir_ / "manifest.json", std::ios::binary);
    out << manifest.dump(2) << '\n';
  }

 private:
  struct File {
    std::string name;
    std::string hash;
    std::size_t bytes;
  };
  fs::path dir_;
  std::vector<File> files_;
};

struct Context {
  const ExperimentConfig& cfg;
  Outputs& out;
  std::ostream& log;
  json summary = json::object();
  json timings = json::object();
  bool numerical_failure = false;

  void time(const std::string& phase, Clock::time_point start) {
    timings[phase] = cfg.record_timing ? ms_since(start) : 0.0;
  }
};

std::string csv(const IterationTrace& t, bool timing) {
  std::ostringstream s;
  t.write_csv(s, timing);
  return s.str();
}

std::string error_curve(const IterationTrace& t, double f_reference) {
  std::ostringstream s;
  s << "step,opt_error,iterate_error\n";
  for (const auto& r : t.rows) {
    s << r.step << ',' << format_number(r.f_value - f_reference) << ','
      << (r.dist_to_reference ? format_number(*r.dist_to_reference) : std::string()) << '\n';
  }
  return s.str();
}

// Geometric mean of successive iterate-error ratios while the error is above
// the noise floor.
double empirical_factor(const IterationTrace& t) {
  double log_sum = 0.0;
  int count = 0;
  for (std::size_t k = 1; k < t.rows.size(); ++k) {
    const auto& prev = t.rows[k - 1].dist_to_reference;
    const auto& cur = t.rows[k].dist_to_reference;
    if (!prev || !cur || *prev < 1e-9 || *cur <= 0.0) break;
    log_sum += std::log(*cur / *prev);
    ++count;
  }
  return count == 0 ? 0.0 : std::exp(log_sum / count);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, "malformed " + path + ": " + e.what());
  }
}

std::vector<DensityMatrix> random_states(GaussianSource& source, int n, int d) {
  std::vector<DensityMatrix> states;
  states.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) states.push_back(random_density_matrix(source, d));
  return states;
}

struct StateData {
  std::vector<DensityMatrix> states;
  RealVector weights;
};

StateData quantum_data(const ExperimentConfig& cfg) {
  if (!cfg.problem_file.empty()) {
    const json j = read_json_file(cfg.problem_file);
    StateData data;
    for (const auto& s : j.at("states")) data.states.emplace_back(hermitian_from_json(s));
    data.weights = j.contains("weights")
                       ? vector_from_json(j.at("weights"))
                       : RealVector::Constant(static_cast<Eigen::Index>(data.states.size()),
                                              1.0 / static_cast<double>(data.states.size()));
    return data;
  }
  GaussianSource source(cfg.seed);
  StateData data;
  data.states = random_states(source, cfg.n, cfg.d);
  data.weights = random_simplex_point(source, cfg.n);
  return data;
}

SolveOptions reference_options(const ExperimentConfig& cfg) {
  SolveOptions o;
  o.max_iter = cfg.reference_iterations;
  o.residual_tol = 1e-12;
  o.record_timing = false;
  return o;
}

SolveOptions run_options(const ExperimentConfig& cfg) {
  SolveOptions o;
  o.max_iter = cfg.iterations;
  o.residual_tol = 0.0;
  o.record_timing = cfg.record_timing;
  return o;
}

void run_augustin(Context& ctx) {
  const StateData data = quantum_data(ctx.cfg);
  const Eigen::Index d = data.states.front().dim();
  for (double alpha : ctx.cfg.alphas) {
    const auto start = Clock::now();
    const std::string tag = alpha_tag(alpha);
    const AugustinProblem p(data.states, data.weights, Order(alpha));
    const DensityMatrix q1 = DensityMatrix::maximally_mixed(d);

    const SolveReport ref = solve_petz_augustin(p, q1, reference_options(ctx.cfg));
    if (ref.stop_reason == StopReason::NonFinite) {
      ctx.numerical_failure = true;
      ctx.log << "alpha=" << tag << ": reference solve failed\n";
      continue;
    }
    const double f_ref = objective_F(p, ref.final_state).value();
    const SolveReport run = solve_petz_augustin(p, q1, run_options(ctx.cfg), ref.final_state);

    ctx.out.write("trace_alpha_" + tag + ".csv", csv(run.trace, ctx.cfg.record_timing));
    ctx.out.write("errors_alpha_" + tag + ".csv", error_curve(run.trace, f_ref));
    const double factor = empirical_factor(run.trace);
    ctx.summary["alpha_" + tag] = {{"steps", run.steps},
                                   {"stop_reason", to_string(run.stop_reason)},
                                   {"convergence_guaranteed", run.convergence_guaranteed},
                                   {"reference_converged", ref.converged},
                                   {"reference_steps", ref.steps},
                                   {"f_reference", f_ref},
                                   {"empirical_factor", factor},
                                   {"contraction_bound", Order(alpha).contraction_factor()},
                                   {"degenerate_evaluations", run.degenerate_evaluations}};
    ctx.log << "alpha=" << tag << " steps=" << run.steps << " final iterate error="
            << format_number(run.trace.rows.back().dist_to_reference.value_or(NAN))
            << " empirical factor=" << format_number(factor) << '\n';
    if (run.stop_reason == StopReason::NonFinite) ctx.numerical_failure = true;
    ctx.time("alpha_" + tag, start);
  }
}

struct ClassicalData {
  RealMatrix points;
  RealVector weights;
};

ClassicalData classical_data(const ExperimentConfig& cfg) {
  if (!cfg.problem_file.empty()) {
    const json j = read_json_file(cfg.problem_file);
    ClassicalData data;
    data.points = matrix_from_json(j.at("points"));
    data.weights = vector_from_json(j.at("weights"));
    return data;
  }
  GaussianSource source(cfg.seed);
  ClassicalData data;
  data.points.resize(cfg.n, cfg.d);
  for (int j = 0; j < cfg.n; ++j) data.points.row(j) = random_simplex_point(source, cfg.d).transpose();
  data.weights = random_simplex_point(source, cfg.n);
  return data;
}

void run_classical(Context& ctx) {
  const ClassicalData data = classical_data(ctx.cfg);
  const Eigen::Index d = data.points.cols();
  for (double alpha : ctx.cfg.alphas) {
    const auto start = Clock::now();
    const std::string tag = alpha_tag(alpha);
    const ClassicalAugustinProblem p(data.points, data.weights, Order(alpha));
    const RealVector q1 = RealVector::Constant(d, 1.0 / static_cast<double>(d));

    const ClassicalSolveReport ref = solve_classical_augustin(p, q1, reference_options(ctx.cfg));
    if (ref.stop_reason == StopReason::NonFinite) {
      ctx.numerical_failure = true;
      ctx.log << "alpha=" << tag << ": reference solve failed\n";
      continue;
    }
    const double f_ref = objective_f(p, ref.final_state).value();
    const ClassicalSolveReport run =
        solve_classical_augustin(p, q1, run_options(ctx.cfg), ref.final_state);

    ctx.out.write("trace_alpha_" + tag + ".csv", csv(run.trace, ctx.cfg.record_timing));
    ctx.out.write("errors_alpha_" + tag + ".csv", error_curve(run.trace, f_ref));
    const double factor = empirical_factor(run.trace);
    ctx.summary["alpha_" + tag] = {{"steps", run.steps},
                                   {"stop_reason", to_string(run.stop_reason)},
                                   {"convergence_guaranteed", run.convergence_guaranteed},
                                   {"reference_converged", ref.converged},
                                   {"f_reference", f_ref},
                                   {"empirical_factor", factor},
                                   {"contraction_bound", Order(alpha).contraction_factor()}};
    ctx.log << "alpha=" << tag << " steps=" << run.steps
            << " empirical factor=" << format_number(factor) << '\n';
    if (run.stop_reason == StopReason::NonFinite) ctx.numerical_failure = true;
    ctx.time("alpha_" + tag, start);
  }
}

void run_capacity(Context& ctx) {
  std::vector<DensityMatrix> states;
  if (!ctx.cfg.problem_file.empty()) {
    const json j = read_json_file(ctx.cfg.problem_file);
    for (const auto& s : j.at("states")) states.emplace_back(hermitian_from_json(s));
  } else {
    GaussianSource source(ctx.cfg.seed);
    states = random_states(source, ctx.cfg.n, ctx.cfg.d);
  }
  for (double alpha : ctx.cfg.alphas) {
    const auto start = Clock::now();
    const std::string tag = alpha_tag(alpha);
    const CapacityProblem p(states, Order(alpha));
    const CapacityReport report = solve_capacity(p, ctx.cfg.iterations,
                                                 constant_epsilon(ctx.cfg.epsilon),
                                                 ctx.cfg.record_timing);
    std::ostringstream s;
    report.write_csv(s, ctx.cfg.record_timing);
    ctx.out.write("capacity_alpha_" + tag + ".csv", s.str());
    ctx.summary["alpha_" + tag] = {{"capacity", report.capacity},
                                   {"certificate", report.certificate},
                                   {"inexactness_budget", report.inexactness_budget},
                                   {"weights", to_json(report.states.back().w)}};
    ctx.log << "alpha=" << tag << " C_hat=" << format_number(report.capacity)
            << " certificate=" << format_number(report.certificate)
            << " inexactness budget=" << format_number(report.inexactness_budget) << '\n';
    ctx.time("alpha_" + tag, start);
  }
}

UpdateSchedule make_schedule(const ExperimentConfig& cfg, int goods) {
  if (cfg.schedule == "round_robin") {
    return UpdateSchedule::round_robin(goods, (cfg.iterations + goods - 1) / goods);
  }
  if (cfg.schedule == "random") {
    return UpdateSchedule::random_coverage(goods, cfg.iterations, cfg.seed + 1);
  }
  return UpdateSchedule::synchronous(goods, cfg.iterations);
}

void run_fisher(Context& ctx) {
  const auto start = Clock::now();
  const FisherMarket m = [&] {
    if (!ctx.cfg.problem_file.empty()) return market_from_json(read_json_file(ctx.cfg.problem_file));
    GaussianSource source(ctx.cfg.seed);
    return random_market(source, ctx.cfg.n, ctx.cfg.d, ctx.cfg.rho_lo, ctx.cfg.rho_hi,
                         ctx.cfg.rho_hat);
  }();
  const int goods = static_cast<int>(m.n_goods());
  const UpdateSchedule sched = make_schedule(ctx.cfg, goods);
  const EquilibriumResult eq = equilibrium_prices(m);
  if (!eq.accepted) {
    ctx.numerical_failure = true;
    ctx.log << "equilibrium oracle not accepted: residual " << format_number(eq.residual) << '\n';
  }
  const ScheduleRun run =
      run_schedule(m, RealVector::Constant(goods, 1.0 / goods), sched);
  std::ostringstream s;
  write_fisher_csv(s, fisher_trace(m, run, eq.prices));
  ctx.out.write("market.json", to_json(m).dump(2) + "\n");
  ctx.out.write("schedule.json", to_json(sched).dump() + "\n");
  ctx.out.write("fisher_trace.csv", s.str());
  ctx.summary["equilibrium"] = {{"prices", to_json(eq.prices)},
                                {"residual", eq.residual},
                                {"steps", eq.steps},
                                {"accepted", eq.accepted}};
  ctx.summary["epochs"] = run.boundaries;
  ctx.summary["unbounded_epoch"] = run.unbounded_epoch;
  ctx.log << "equilibrium residual=" << format_number(eq.residual)
          << " complete epochs=" << run.boundaries.size() << '\n';
  ctx.time("fisher", start);
}

void run_counterexample(Context& ctx) {
  const auto start = Clock::now();
  const CounterexampleValues v = counterexample_values();
  const bool pass = std::abs(v.image_distance - 1.4366) <= 1e-3 &&
                    std::abs(v.scaled_distance - 1.3668) <= 1e-3 &&
                    v.image_distance > v.scaled_distance;
  std::ostringstream s;
  s << "quantity,value\n"
    << "image_distance," << format_number(v.image_distance) << '\n'
    << "scaled_distance," << format_number(v.scaled_distance) << '\n';
  ctx.out.write("counterexample.csv", s.str());
  ctx.summary = {{"image_distance", v.image_distance},
                 {"scaled_distance", v.scaled_distance},
                 {"pass", pass}};
  ctx.log << "d_T(T(V), T(U)) = " << format_number(v.image_distance) << '\n'
          << "|1-1/a| d_T(V, U) = " << format_number(v.scaled_distance) << '\n'
          << (pass ? "PASS" : "FAIL") << '\n';
  if (!pass) ctx.numerical_failure = true;
  ctx.time("counterexample", start);
}

ClassicalAugustinProblem divergence_instance(double alpha) {
  RealMatrix points(3, 3);
  points << 0.9, 0.09, 0.01, 0.009, 0.99, 0.001, 0.0001, 0.0009, 0.999;
  return ClassicalAugustinProblem(points, RealVector::Constant(3, 1.0 / 3.0), Order(alpha));
}

void run_divergence_demo(Context& ctx) {
  std::ostringstream summary_csv;
  summary_csv << "alpha,iterate_error_step5,iterate_error_last,proposed_best,polyak_best,gap\n";
  for (double alpha : ctx.cfg.alphas) {
    const auto start = Clock::now();
    const std::string tag = alpha_tag(alpha);
    const ClassicalAugustinProblem p = divergence_instance(alpha);
    const RealVector q1 = RealVector::Constant(3, 1.0 / 3.0);

    PolyakOptions popts;
    popts.iterations = 1000;
    const PolyakResult<RealVector> polyak = solve_emd_polyak(p, q1, popts);

    SolveOptions opts = run_options(ctx.cfg);
    opts.renormalize = Renormalize::Always;
    const ClassicalSolveReport run = solve_classical_augustin(p, q1, opts, polyak.best);

    double proposed_best = INFINITY;
    for (const auto& r : run.trace.rows) proposed_best = std::min(proposed_best, r.f_value);
    auto error_at = [&](int step) {
      for (const auto& r : run.trace.rows) {
        if (r.step == step && r.dist_to_reference) return *r.dist_to_reference;
      }
      return double{NAN};
    };
    const double early = error_at(5);
    const double late = run.trace.rows.back().dist_to_reference.value_or(NAN);

    ctx.out.write("demo_trace_alpha_" + tag + ".csv", csv(run.trace, ctx.cfg.record_timing));
    std::ostringstream pv;
    pv << "step,f_value\n";
    for (std::size_t k = 0; k < polyak.values.size(); ++k) {
      pv << k + 1 << ',' << format_number(polyak.values[k]) << '\n';
    }
    ctx.out.write("demo_polyak_alpha_" + tag + ".csv", pv.str());
    summary_csv << tag << ',' << format_number(early) << ',' << format_number(late) << ','
                << format_number(proposed_best) << ',' << format_number(polyak.best_value) << ','
                << format_number(proposed_best - polyak.best_value) << '\n';
    ctx.summary["alpha_" + tag] = {{"iterate_error_step5", early},
                                   {"iterate_error_last", late},
                                   {"proposed_best", proposed_best},
                                   {"polyak_best", polyak.best_value},
                                   {"gap", proposed_best - polyak.best_value}};
    ctx.log << "alpha=" << tag << " error step 5=" << format_number(early)
            << " last=" << format_number(late)
            << " best gap=" << format_number(proposed_best - polyak.best_value) << '\n';
    ctx.time("alpha_" + tag, start);
  }
  ctx.out.write("demo_summary.csv", summary_csv.str());
}

void run_oracle_cache(Context& ctx, const fs::path& dir) {
  const auto start = Clock::now();
  const ClassicalData data = classical_data(ctx.cfg);
  OracleCache cache(dir / "oracle_cache.json");
  for (double alpha : ctx.cfg.alphas) {
    const ClassicalAugustinProblem p(data.points, data.weights, Order(alpha));
    const std::string key = OracleCache::key(to_json(p), ctx.cfg.resolution);
    const auto hit = cache.lookup(key);
    OracleCache::Entry entry;
    if (hit) {
      entry = *hit;
    } else {
      const GridMinimum g = grid_min_classical_augustin(p, GridSpec(ctx.cfg.resolution, p.dim()));
      entry.value = g.value;
      entry.argmin.assign(g.argmin.data(), g.argmin.data() + g.argmin.size());
      entry.resolution = ctx.cfg.resolution;
      cache.store(key, entry);
    }
    ctx.summary["alpha_" + alpha_tag(alpha)] = {{"key", key}, {"value", entry.value},
                                                {"cached", hit.has_value()}};
    ctx.log << "alpha=" << alpha_tag(alpha) << " grid minimum=" << format_number(entry.value)
            << (hit ? " (cached)" : "") << '\n';
  }
  cache.save();
  std::ifstream in(dir / "oracle_cache.json", std::ios::binary);
  ctx.out.write("oracle_cache.json", std::string(std::istreambuf_iterator<char>(in), {}));
  ctx.time("oracle_cache", start);
}

const std::map<std::string, Task>& task_names() {
  static const std::map<std::string, Task> names{
      {"augustin", Task::Augustin},
      {"classical", Task::Classical},
      {"capacity", Task::Capacity},
      {"fisher", Task::Fisher},
      {"counterexample", Task::Counterexample},
      {"divergence_demo", Task::DivergenceDemo},
      {"divergence-demo", Task::DivergenceDemo},
      {"oracle_cache", Task::OracleCache},
      {"oracle-cache", Task::OracleCache},
  };
  return names;
}

}  // namespace

const char* to_string(Task t) {
  switch (t) {
    case Task::Augustin: return "augustin";
    case Task::Classical: return "classical";
    case Task::Capacity: return "capacity";
    case Task::Fisher: return "fisher";
    case Task::Counterexample: return "counterexample";
    case Task::DivergenceDemo: return "divergence_demo";
    case Task::OracleCache: return "oracle_cache";
  }
  return "unknown";
}

std::optional<Task> task_from_string(const std::string& name) {
  const auto it = task_names().find(name);
  if (it == task_names().end()) return std::nullopt;
  return it->second;
}

ExperimentConfig default_config(Task task) {
  ExperimentConfig cfg;
  cfg.task = task;
  switch (task) {
    case Task::Augustin:
    case Task::Classical:
      break;
    case Task::Capacity:
      cfg.n = 4;
      cfg.d = 2;
      cfg.alphas = {0.6, 0.8};
      cfg.iterations = 50;
      break;
    case Task::Fisher:
      cfg.n = 5;
      cfg.d = 6;
      cfg.alphas = {};
      cfg.iterations = 120;
      break;
    case Task::Counterexample:
      cfg.n = 1;
      cfg.d = 2;
      cfg.alphas = {3.0};
      break;
    case Task::DivergenceDemo:
      cfg.n = 3;
      cfg.d = 3;
      cfg.alphas = {0.2, 0.4};
      break;
    case Task::OracleCache:
      cfg.n = 3;
      cfg.d = 3;
      cfg.alphas = {1.5};
      break;
  }
  return cfg;
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  const std::string task_name = j.value("task", std::string("augustin"));
  const auto task = task_from_string(task_name);
  if (!task) throw std::invalid_argument("unknown task '" + task_name + "'");
  ExperimentConfig cfg = default_config(*task);
  static const std::set<std::string> known{
      "task",    "seed",     "n",      "d",        "alphas",       "alpha",
      "iterations", "reference_iterations", "epsilon", "rho_lo", "rho_hi", "rho_hat",
      "schedule", "resolution", "problem_file", "output_dir", "threads", "record_timing"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw std::invalid_argument("unknown config key '" + key + "'");
  }
  cfg.seed = j.value("seed", cfg.seed);
  cfg.n = j.value("n", cfg.n);
  cfg.d = j.value("d", cfg.d);
  if (j.contains("alphas")) cfg.alphas = j.at("alphas").get<std::vector<double>>();
  if (j.contains("alpha")) cfg.alphas = {j.at("alpha").get<double>()};
  cfg.iterations = j.value("iterations", cfg.iterations);
  cfg.reference_iterations = j.value("reference_iterations", cfg.reference_iterations);
  cfg.epsilon = j.value("epsilon", cfg.epsilon);
  cfg.rho_lo = j.value("rho_lo", cfg.rho_lo);
  cfg.rho_hi = j.value("rho_hi", cfg.rho_hi);
  cfg.rho_hat = j.value("rho_hat", cfg.rho_hat);
  cfg.schedule = j.value("schedule", cfg.schedule);
  cfg.resolution = j.value("resolution", cfg.resolution);
  cfg.problem_file = j.value("problem_file", cfg.problem_file);
  cfg.output_dir = j.value("output_dir", cfg.output_dir);
  cfg.threads = j.value("threads", cfg.threads);
  cfg.record_timing = j.value("record_timing", cfg.record_timing);
  return cfg;
}

json to_json(const ExperimentConfig& cfg) {
  return {{"task", to_string(cfg.task)},
          {"seed", cfg.seed},
          {"n", cfg.n},
          {"d", cfg.d},
          {"alphas", cfg.alphas},
          {"iterations", cfg.iterations},
          {"reference_iterations", cfg.reference_iterations},
          {"epsilon", cfg.epsilon},
          {"rho_lo", cfg.rho_lo},
          {"rho_hi", cfg.rho_hi},
          {"rho_hat", cfg.rho_hat},
          {"schedule", cfg.schedule},
          {"resolution", cfg.resolution},
          {"problem_file", cfg.problem_file},
          {"output_dir", cfg.output_dir},
          {"threads", cfg.threads},
          {"record_timing", cfg.record_timing}};
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
  std::vector<std::string> v;
  const bool generated = cfg.problem_file.empty();
  if (cfg.iterations < 1) v.push_back("iterations must be at least 1");
  if (cfg.reference_iterations < 1) v.push_back("reference_iterations must be at least 1");
  if (cfg.threads < 1) v.push_back("threads must be at least 1");
  if (cfg.output_dir.empty()) v.push_back("output_dir must not be empty");
  if (generated && cfg.n < 1) v.push_back("n must be at least 1");
  if (generated && cfg.d < 1) v.push_back("d must be at least 1");

  const bool uses_alpha = cfg.task != Task::Fisher && cfg.task != Task::Counterexample;
  if (uses_alpha && cfg.alphas.empty()) v.push_back("at least one alpha is required");
  for (double a : cfg.alphas) {
    if (!(std::isfinite(a) && a > 0.0 && a != 1.0)) {
      v.push_back("alpha " + alpha_tag(a) + " outside (0,1) U (1,inf)");
    } else if (cfg.task == Task::Capacity && !(a > 0.5 && a < 1.0)) {
      v.push_back("capacity needs alpha in (1/2, 1), got " + alpha_tag(a));
    }
  }
  switch (cfg.task) {
    case Task::Capacity:
      if (!(cfg.epsilon > 0.0)) v.push_back("epsilon must be positive");
      break;
    case Task::Fisher:
      if (generated) {
        if (!(cfg.rho_lo > 0.0 && cfg.rho_lo <= cfg.rho_hi && cfg.rho_hi < 1.0)) {
          v.push_back("rho range must satisfy 0 < rho_lo <= rho_hi < 1");
        }
        if (!(cfg.rho_hat >= cfg.rho_hi && cfg.rho_hat < 1.0)) {
          v.push_back("rho_hat must lie in [max rho, 1)");
        }
      }
      if (cfg.schedule != "synchronous" && cfg.schedule != "round_robin" &&
          cfg.schedule != "random") {
        v.push_back("schedule must be synchronous, round_robin or random");
      }
      break;
    case Task::OracleCache:
      if (cfg.resolution < 3) v.push_back("resolution must be at least 3");
      if (generated && cfg.d > 4) v.push_back("grid oracle supports d <= 4");
      break;
    default:
      break;
  }
  return v;
}

fs::path resolve_output_dir(const ExperimentConfig& cfg) {
  if (const char* env = std::getenv("AUGUSTIN_LAB_OUT"); env != nullptr && *env != '\0') {
    return fs::path(env);
  }
  return fs::path(cfg.output_dir);
}

CounterexampleValues counterexample_values() {
  RealMatrix a(2, 2);
  a << 19.5364, 4.42, 4.42, 1.1;
  RealMatrix u(2, 2);
  u << 2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0;
  RealMatrix v(2, 2);
  v << 1.0, 1.0, 1.0, 1.1;
  v /= 2.1;
  const Order order(3.0);
  const AugustinProblem p = AugustinProblem::with_unnormalized_states(
      {HermitianMatrix(a)}, RealVector::Ones(1), order);
  const HermitianMatrix hu(u);
  const HermitianMatrix hv(v);
  CounterexampleValues out;
  out.image_distance = thompson_metric_psd(apply_step_map(p, hv), apply_step_map(p, hu));
  out.scaled_distance = order.contraction_factor() * thompson_metric_psd(hv, hu);
  return out;
}

int run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
  const auto violations = validate_config(cfg);
  if (!violations.empty()) {
    for (const auto& msg : violations) log << "config error: " << msg << '\n';
    return kExitConfig;
  }
  const fs::path dir = resolve_output_dir(cfg);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    log << "config error: cannot create output directory " << dir << '\n';
    return kExitConfig;
  }
  set_thread_count(cfg.threads);

  Outputs outputs(dir);
  Context ctx{cfg, outputs, log};
  const auto start = Clock::now();
  int code = kExitOk;
  try {
    switch (cfg.task) {
      case Task::Augustin: run_augustin(ctx); break;
      case Task::Classical: run_classical(ctx); break;
      case Task::Capacity: run_capacity(ctx); break;
      case Task::Fisher: run_fisher(ctx); break;
      case Task::Counterexample: run_counterexample(ctx); break;
      case Task::DivergenceDemo: run_divergence_demo(ctx); break;
      case Task::OracleCache: run_oracle_cache(ctx, dir); break;
    }
    if (ctx.numerical_failure) code = kExitNumerical;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    const bool config_kind = e.kind() == ErrorKind::InvalidInput ||
                             e.kind() == ErrorKind::InvalidOrder ||
                             e.kind() == ErrorKind::Unsupported;
    code = config_kind ? kExitConfig : kExitNumerical;
  } catch (const json::exception& e) {
    log << "config error: " << e.what() << '\n';
    code = kExitConfig;
  } catch (const std::runtime_error& e) {
    log << "error: " << e.what() << '\n';
    code = kExitConfig;
  }
  ctx.time("total", start);
  outputs.write_manifest(cfg, ctx.summary, ctx.timings, code);
  return code;
}

}  // namespace augustin::lab
