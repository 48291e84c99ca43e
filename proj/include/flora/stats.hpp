#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>

#include "flora/pricing.hpp"
#include "flora/trace.hpp"

namespace flora {

/// Descriptive statistics in the layout of a pandas `describe()`: sample standard deviation
/// (divisor n-1) and linearly interpolated quartiles.
struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;
  double min = 0.0;
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
  double max = 0.0;
  bool std_defined = false;  // false for fewer than two values; std is then reported as 0
};

Summary summarize(std::span<const double> values);

// Linear interpolation between closest ranks, position q * (n - 1) on the sorted values.
double quantile_sorted(std::span<const double> sorted, double q);

struct TraceStatistics {
  Summary cost;     // per-cell execution cost
  Summary runtime;  // per-cell aggregated runtime in seconds
};

// Requires a complete trace (throws validation_error listing missing cells otherwise).
TraceStatistics trace_statistics(const ProfilingTrace& trace, const PriceModel& prices);

// Two-column CSV: metric,value with rows like cost_mean, runtime_max, ...
void write_statistics_csv(std::ostream& out, const TraceStatistics& stats, int decimals = 3);
// Aligned text table with cost and runtime columns.
std::string statistics_table(const TraceStatistics& stats, int decimals = 3);

}  // namespace flora
