#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flora/pricing.hpp"
#include "flora/selector.hpp"
#include "flora/trace.hpp"

namespace flora {

/// Outcome of one policy on one job, normalized against that job's full trace row (1.0 = optimal).
struct JobResult {
  std::string job_id;
  std::string policy;
  std::optional<int> selected_config_id;  // empty for the random expectation
  double normalized_cost = 0.0;
  double normalized_runtime = 0.0;
};

struct PolicyAggregate {
  std::string policy;
  std::string label;
  double mean_cost = 0.0;  // unweighted mean over evaluated jobs
  double mean_runtime = 0.0;
  std::size_t jobs = 0;
};

struct EvaluationReport {
  std::vector<JobResult> per_job;          // grouped by policy (input order), then trace job order
  std::vector<PolicyAggregate> aggregate;  // one entry per policy, input order
  std::string price_model_as_of;
  std::size_t total_jobs = 0;
  std::vector<std::string> notices;

  const PolicyAggregate* find(std::string_view policy) const;
  const JobResult* find(std::string_view policy, std::string_view job_id) const;
};

struct EvaluateOptions {
  unsigned threads = 1;
};

/// Leave-one-algorithm-out evaluation: every job of `trace` is treated as unseen, trace-based
/// policies learn only from other algorithms, and each selection is scored against the job's own
/// full cost and runtime row. Replay policies skip jobs they have no entry for (with a notice);
/// in lenient traces, jobs with missing cells are skipped by every policy.
EvaluationReport evaluate(const ProfilingTrace& trace, const PriceModel& prices,
                          std::span<const SelectionPolicy> policies, EvaluateOptions options = {});

struct SweepTable {
  std::vector<double> ratios;
  double anchor = 1.0;
  std::vector<std::string> policies;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> mean_cost;  // [ratio][policy]
  std::vector<EvaluationReport> reports;       // one per ratio
};

// `points_per_decade` log-spaced values from lo to hi inclusive (hi appended if not hit exactly).
std::vector<double> log_grid(double lo, double hi, int points_per_decade);

/// One evaluate() pass per memory/cpu price ratio using model_from_ratio(ratio, anchor).
SweepTable price_ratio_sweep(const ProfilingTrace& trace, std::span<const double> ratios, double anchor,
                             std::span<const SelectionPolicy> policies, EvaluateOptions options = {});

struct SamplingOptions {
  std::uint64_t exhaustive_threshold = 20000;
  std::size_t samples = 2000;
  std::uint64_t seed = 20241201;
};

struct MisclassificationPoint {
  int k = 0;
  double mean_cost = 0.0;  // mean over flipped subsets of the Flora mean normalized cost
  double std_error = 0.0;  // Monte Carlo standard error; 0 for exhaustive enumeration
  std::uint64_t subsets = 0;
  bool exhaustive = true;
};

struct MisclassificationStudy {
  std::size_t n_jobs = 0;
  std::vector<MisclassificationPoint> points;
  double fw1c_mean_cost = 0.0;  // reference line
  std::string price_model_as_of;
};

/// Flora with k of the evaluated jobs given the wrong class label at selection time; test-job
/// labels stay correct. For each k the Flora mean is averaged over all C(n, k) flipped subsets when
/// that count is within `exhaustive_threshold`, else over `samples` seeded random subsets.
MisclassificationStudy misclassification_study(const ProfilingTrace& trace, const PriceModel& prices,
                                               std::span<const int> k_values, SamplingOptions sampling = {},
                                               EvaluateOptions options = {});

// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

enum class ReportFormat { csv, markdown, plotdata };
ReportFormat parse_report_format(std::string_view text);

// csv: policy,job_id,selected_config,normalized_cost,normalized_runtime
// markdown: aggregate table (approach, cost, runtime) followed by per-job selections
// plotdata: series,x,y with one series per policy, x = job index, y = normalized cost
std::string emit_report(const EvaluationReport& report, ReportFormat format, int decimals = 3);
// policy,mean_cost,mean_runtime,jobs
std::string emit_aggregate_csv(const EvaluationReport& report, int decimals = 3);
std::string emit_sweep(const SweepTable& sweep, ReportFormat format, int decimals = 3);
std::string emit_misclassification(const MisclassificationStudy& study, ReportFormat format, int decimals = 3);

}  // namespace flora
