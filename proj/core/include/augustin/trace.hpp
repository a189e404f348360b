#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace augustin {

/// One row per iterate of a fixed-point solve.
struct TraceRow {
  int step = 0;
  double f_value = 0.0;
  double trace = 0.0;
  /// d_T(Q_t^{1-a}, Q_{t-1}^{1-a}); absent for the starting point.
  std::optional<double> residual_thompson;
  /// Iterate error against a caller-supplied reference.
  std::optional<double> dist_to_reference;
  double wall_time_ms = 0.0;
};

struct IterationTrace {
  std::vector<TraceRow> rows;

  /// Columns: step,f_value,trace,residual_thompson,dist_to_reference,wall_time_ms.
  /// With record_timing == false the timing column is written as 0 so files are
  /// byte-reproducible.
  void write_csv(std::ostream& out, bool record_timing = true) const;
};

/// Shortest round-trip decimal for a double ("%.17g"), "inf" / "nan" spelled out.
std::string format_number(double x);

}  // namespace augustin
