#include "augustin/oracles.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "augustin/error.hpp"
#include "augustin/hashing.hpp"
#include "augustin/parallel.hpp"

namespace augustin {

namespace {

// Calls visit(k) for every composition of `total` into k.size() parts, in
// lexicographic order.
void for_each_composition(int total, Eigen::VectorXi& k, Eigen::Index pos,
                          const std::function<void(const Eigen::VectorXi&)>& visit) {
  if (pos == k.size() - 1) {
    k(pos) = total;
    visit(k);
    return;
  }
  for (int v = 0; v <= total; ++v) {
    k(pos) = v;
    for_each_composition(total - v, k, pos + 1, visit);
  }
}

double golden_section(const std::function<double(double)>& fn, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fn(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

GridSpec::GridSpec(int resolution_, Eigen::Index dimension_)
    : resolution(resolution_), dimension(dimension_) {
  if (resolution < 3) throw Error(ErrorKind::InvalidInput, "grid resolution must be at least 3");
  if (dimension < 1) throw Error(ErrorKind::InvalidInput, "grid dimension must be positive");
}

GridMinimum grid_min_classical_augustin(const ClassicalAugustinProblem& p, const GridSpec& grid) {
  if (grid.dimension != p.dim()) throw Error(ErrorKind::InvalidInput, "grid dimension mismatch");
  if (p.dim() > 4) throw Error(ErrorKind::Unsupported, "grid oracle supports d <= 4");

  GridMinimum best;
  best.value = std::numeric_limits<double>::infinity();
  Eigen::VectorXi k(p.dim());
  const double res = grid.resolution;
  for_each_composition(grid.resolution, k, 0, [&](const Eigen::VectorXi& point) {
    const RealVector q = point.cast<double>() / res;
    const ExtendedReal f = objective_f(p, q);
    if (f.is_finite() && f.value() < best.value) {
      best.value = f.value();
      best.argmin = q;
    }
  });
  if (best.argmin.size() == 0) throw Error(ErrorKind::NonFinite, "objective infinite on the whole grid");
  return best;
}

RealVector finite_diff_gradient(const SimplexFunction& fn, const RealVector& w, double h) {
  if (!(h >= 1e-6 && h <= 1e-4)) throw Error(ErrorKind::InvalidInput, "step must lie in [1e-6, 1e-4]");
  if (!(w.minCoeff() > 10.0 * h)) throw Error(ErrorKind::InvalidInput, "point too close to the boundary");
  const Eigen::Index d = w.size();
  RealVector grad(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    RealVector u = RealVector::Constant(d, -1.0 / static_cast<double>(d));
    u(i) += 1.0;
    grad(i) = (fn(w + h * u) - fn(w - h * u)) / (2.0 * h);
  }
  return grad;
}

double capacity_objective(const CapacityProblem& p, const RealVector& w, double residual_tol) {
  const AugustinProblem problem = p.at(w);
  SolveOptions opts;
  opts.max_iter = 100000;
  opts.residual_tol = residual_tol;
  opts.record_timing = false;
  const SolveReport report =
      solve_petz_augustin(problem, DensityMatrix::maximally_mixed(p.dim()), opts);
  if (report.stop_reason == StopReason::NonFinite) {
    throw Error(ErrorKind::NonFinite, "inner solve failed");
  }
  return -objective_F(problem, report.final_state).value();
}

CapacityGridMinimum grid_min_capacity_2(const CapacityProblem& p, int resolution) {
  if (p.size() != 2) throw Error(ErrorKind::Unsupported, "capacity grid oracle needs n = 2");
  if (resolution < 3) throw Error(ErrorKind::InvalidInput, "grid resolution must be at least 3");
  const auto count = static_cast<std::size_t>(resolution) + 1;
  std::vector<double> values(count, 0.0);
  parallel_for(count - 2, [&](std::size_t i) {
    const double s = static_cast<double>(i + 1) / resolution;
    values[i + 1] = capacity_objective(p, RealVector{{s, 1.0 - s}}, 1e-10);
  });
  std::size_t best = 0;
  for (std::size_t k = 1; k < count; ++k) {
    if (values[k] < values[best]) best = k;
  }
  const double s = static_cast<double>(best) / resolution;
  return {RealVector{{s, 1.0 - s}}, values[best]};
}

RealVector potential_coordinate_descent(const FisherMarket& m, int sweeps, double tol) {
  const Eigen::Index d = m.n_goods();
  if (d > 4) throw Error(ErrorKind::Unsupported, "coordinate descent oracle supports d <= 4");
  RealVector y = RealVector::Constant(d, -std::log(static_cast<double>(d)));
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    double moved = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      auto along = [&](double yi) {
        RealVector z = y;
        z(i) = yi;
        return potential(m, RealVector(z.array().exp()));
      };
      const double next = golden_section(along, y(i) - 2.0, y(i) + 2.0, 1e-13);
      moved = std::max(moved, std::abs(next - y(i)));
      y(i) = next;
    }
    if (moved < tol) break;
  }
  return y.array().exp();
}

OracleCache::OracleCache(std::filesystem::path file) : file_(std::move(file)) {
  std::ifstream in(file_);
  if (!in) return;
  const nlohmann::json doc = nlohmann::json::parse(in);
  for (const auto& [k, v] : doc.items()) {
    Entry e;
    e.value = v.at("value").get<double>();
    e.argmin = v.at("argmin").get<std::vector<double>>();
    e.resolution = v.at("resolution").get<int>();
    entries_.emplace(k, std::move(e));
  }
}

std::string OracleCache::key(const nlohmann::json& problem, int resolution) {
  return sha256_hex(problem.dump() + "#" + std::to_string(resolution));
}

std::optional<OracleCache::Entry> OracleCache::lookup(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void OracleCache::store(const std::string& key, Entry entry) { entries_[key] = std::move(entry); }

void OracleCache::save() const {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [k, e] : entries_) {
    doc[k] = {{"value", e.value}, {"argmin", e.argmin}, {"resolution", e.resolution}};
  }
  if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path());
  std::ofstream out(file_);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + file_.string());
  out << doc.dump(2) << '\n';
}

}  // namespace augustin
