#include "augustin/trace.hpp"

#include <cmath>
#include <cstdio>

namespace augustin {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void IterationTrace::write_csv(std::ostream& out, bool record_timing) const {
  out << "step,f_value,trace,residual_thompson,dist_to_reference,wall_time_ms\n";
  for (const auto& r : rows) {
    out << r.step << ',' << format_number(r.f_value) << ',' << format_number(r.trace) << ',';
    if (r.residual_thompson) out << format_number(*r.residual_thompson);
    out << ',';
    if (r.dist_to_reference) out << format_number(*r.dist_to_reference);
    out << ',' << format_number(record_timing ? r.wall_time_ms : 0.0) << '\n';
  }
}

}  // namespace augustin
