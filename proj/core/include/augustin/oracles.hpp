#pragma once

// Brute-force references: simplex grids, finite differences, a 1-D capacity
// scan, a potential minimizer for small markets, and an on-disk result cache.

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "augustin/capacity.hpp"
#include "augustin/fisher.hpp"

namespace augustin {

struct GridSpec {
  /// Throws Error{InvalidInput} for resolution < 3 or dimension < 1.
  GridSpec(int resolution, Eigen::Index dimension);

  int resolution;
  Eigen::Index dimension;
};

struct GridMinimum {
  RealVector argmin;
  double value = 0.0;
};

/// Every q = k / resolution with nonnegative integer k summing to resolution;
/// ties go to the lexicographically smallest k. Throws Error{Unsupported} for
/// d > 4.
GridMinimum grid_min_classical_augustin(const ClassicalAugustinProblem& p, const GridSpec& grid);

using SimplexFunction = std::function<double(const RealVector&)>;

/// Central differences along e_i - 1/d, so the result sums to zero and is the
/// tangential part of the gradient. Throws Error{InvalidInput} unless
/// h in [1e-6, 1e-4] and every w[i] > 10 h.
RealVector finite_diff_gradient(const SimplexFunction& fn, const RealVector& w, double h);

/// g(w) = -sum_j w[j] D_a(A_j || Q*(w)) with the inner solve run to the
/// given fixed-point residual.
double capacity_objective(const CapacityProblem& p, const RealVector& w, double residual_tol = 1e-10);

struct CapacityGridMinimum {
  RealVector w_best;
  double g_best = 0.0;
};

/// Scans w = (s, 1-s) for s = k / resolution. The vertices give g = 0.
/// Throws Error{Unsupported} unless n = 2.
CapacityGridMinimum grid_min_capacity_2(const CapacityProblem& p, int resolution);

/// Cyclic golden-section descent on the market potential in log prices.
/// Throws Error{Unsupported} for more than 4 goods.
RealVector potential_coordinate_descent(const FisherMarket& m, int sweeps = 400, double tol = 1e-12);

/// Persistent map from (problem hash, resolution) to oracle results, stored
/// as JSON: hash -> {value, argmin, resolution}.
class OracleCache {
 public:
  struct Entry {
    double value = 0.0;
    std::vector<double> argmin;
    int resolution = 0;
  };

  /// Loads the file when it exists.
  explicit OracleCache(std::filesystem::path file);

  static std::string key(const nlohmann::json& problem, int resolution);

  std::optional<Entry> lookup(const std::string& key) const;
  void store(const std::string& key, Entry entry);
  void save() const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::filesystem::path file_;
  std::map<std::string, Entry> entries_;
};

}  // namespace augustin
