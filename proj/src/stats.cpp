#include "flora/stats.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "flora/error.hpp"
#include "flora/format.hpp"

namespace flora {

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw validation_error("quantile of an empty set");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

Summary summarize(std::span<const double> values) {
  if (values.empty()) throw validation_error("summary of an empty set");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  Summary s;
  s.count = sorted.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(s.count - 1));
    s.std_defined = true;
  }
  s.min = sorted.front();
  s.max = sorted.back();
  s.q25 = quantile_sorted(sorted, 0.25);
  s.q50 = quantile_sorted(sorted, 0.50);
  s.q75 = quantile_sorted(sorted, 0.75);
  return s;
}

TraceStatistics trace_statistics(const ProfilingTrace& trace, const PriceModel& prices) {
  if (!trace.complete()) {
    const auto missing = trace.missing_cells();
    throw validation_error("trace_statistics needs a complete trace; missing: " + describe_missing(missing));
  }
  if (trace.jobs().empty() || trace.catalog().empty()) throw validation_error("trace_statistics: empty trace");
  std::vector<double> costs;
  std::vector<double> runtimes;
  for (std::size_t j = 0; j < trace.jobs().size(); ++j) {
    for (std::size_t c = 0; c < trace.catalog().size(); ++c) {
      const double rt = *trace.runtime(j, c);
      runtimes.push_back(rt);
      costs.push_back(execution_cost(rt, trace.catalog().configs()[c], prices));
    }
  }
  return {summarize(costs), summarize(runtimes)};
}

namespace {

std::vector<std::pair<const char*, double>> rows_of(const Summary& s) {
  return {{"mean", s.mean}, {"std", s.std}, {"min", s.min}, {"25%", s.q25},
          {"50%", s.q50},   {"75%", s.q75}, {"max", s.max}};
}

}  // namespace

void write_statistics_csv(std::ostream& out, const TraceStatistics& stats, int decimals) {
  static constexpr const char* keys[] = {"mean", "std", "min", "q25", "q50", "q75", "max"};
  out << "metric,value\n";
  out << "cells," << stats.cost.count << '\n';
  for (const auto& [prefix, summary] : {std::pair{"cost", &stats.cost}, std::pair{"runtime", &stats.runtime}}) {
    const auto rows = rows_of(*summary);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out << prefix << '_' << keys[i] << ',' << format_fixed(rows[i].second, decimals) << '\n';
    }
  }
  if (!stats.cost.std_defined) out << "std_defined,false\n";
}

std::string statistics_table(const TraceStatistics& stats, int decimals) {
  std::ostringstream out;
  out << std::left << std::setw(6) << "" << std::right << std::setw(14) << "Cost" << std::setw(18) << "Runtime [s]"
      << '\n';
  const auto cost = rows_of(stats.cost);
  const auto runtime = rows_of(stats.runtime);
  for (std::size_t i = 0; i < cost.size(); ++i) {
    out << std::left << std::setw(6) << cost[i].first << std::right << std::setw(14)
        << format_fixed(cost[i].second, decimals) << std::setw(18) << format_fixed(runtime[i].second, decimals) << '\n';
  }
  if (!stats.cost.std_defined) out << "(std undefined for a single cell, reported as 0)\n";
  return out.str();
}

}  // namespace flora
