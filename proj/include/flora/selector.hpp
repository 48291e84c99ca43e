#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flora/pricing.hpp"
#include "flora/trace.hpp"

namespace flora {

struct RankEntry {
  int config_id = 0;
  double score = 0.0;  // sum over test jobs of cost / (that job's cheapest cost)

  bool operator==(const RankEntry&) const = default;
};

/// Configurations ordered by ascending score, ties broken by ascending config_id.
struct ConfigRanking {
  std::vector<RankEntry> entries;
  int selected = 0;
  std::size_t test_jobs = 0;             // jobs that contributed to the scores
  std::vector<std::string> dropped_jobs;  // incomplete jobs skipped in lenient mode

  bool operator==(const ConfigRanking&) const = default;
};

/// Retains jobs of `target_class` (all classes when nullopt) whose algorithm differs from
/// `excluded_algorithm`; every dataset size of the excluded algorithm goes. Throws
/// validation_error("no applicable test jobs") when nothing is left.
ProfilingTrace filter_test_jobs(const ProfilingTrace& trace, std::optional<JobClass> target_class,
                                std::optional<std::string_view> excluded_algorithm);

/// Scores every configuration by the sum of per-job normalized costs under `prices`.
///
/// Each test job contributes cost(j, c) / min over configs of cost(j, .), so every job weighs the
/// same regardless of its absolute runtime. Jobs missing a cell are rejected for strict traces and
/// dropped (listed in `dropped_jobs`) for lenient ones. A job whose cheapest cost is zero makes the
/// normalization undefined and is rejected.
ConfigRanking rank_configurations(const ProfilingTrace& test_jobs, const PriceModel& prices);

class SelectionPolicy {
 public:
  enum class Kind { flora, flora_inverted, fw1c, min_cpu, max_cpu, min_mem, max_mem, random_expectation, replay };

  static SelectionPolicy flora() { return SelectionPolicy(Kind::flora, "flora"); }
  // Flora fed the opposite class label for every evaluated job.
  static SelectionPolicy flora_inverted() { return SelectionPolicy(Kind::flora_inverted, "flora_inverted"); }
  static SelectionPolicy fw1c() { return SelectionPolicy(Kind::fw1c, "fw1c"); }
  static SelectionPolicy min_cpu() { return SelectionPolicy(Kind::min_cpu, "min_cpu"); }
  static SelectionPolicy max_cpu() { return SelectionPolicy(Kind::max_cpu, "max_cpu"); }
  static SelectionPolicy min_mem() { return SelectionPolicy(Kind::min_mem, "min_mem"); }
  static SelectionPolicy max_mem() { return SelectionPolicy(Kind::max_mem, "max_mem"); }
  static SelectionPolicy random_expectation() { return SelectionPolicy(Kind::random_expectation, "random"); }
  static SelectionPolicy replay(std::string name, std::map<std::string, int> selections);

  // Accepts the short keys above ("flora", "fw1c", "min_cpu", ..., "random").
  static SelectionPolicy parse(std::string_view key);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  std::string label() const;  // human-readable row label for reports
  bool uses_trace() const { return kind_ == Kind::flora || kind_ == Kind::flora_inverted || kind_ == Kind::fw1c; }

  const std::map<std::string, int, std::less<>>& replay_selections() const { return replay_; }
  std::optional<int> replay_selection(std::string_view job_id) const;

 private:
  SelectionPolicy(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
  std::map<std::string, int, std::less<>> replay_;
};

// Flora, Fw1C, the four min/max baselines and the random expectation, in report order.
std::vector<SelectionPolicy> standard_policies();

/// Point selection of a policy for `job`.
///
/// Trace-based policies exclude all test jobs sharing `job.algorithm` (the job is treated as never
/// seen before); Flora additionally restricts to `job.job_class`. Static policies pick the
/// min/max of total cores or memory over `catalog`. Ties break by ascending config_id.
/// RandomExpectation has no point selection and throws; a Replay without an entry for the job throws.
int select(const SelectionPolicy& policy, const JobSpec& job, const ProfilingTrace& trace, const PriceModel& prices,
           const ConfigCatalog& catalog);

// Header: job_id,config_id
std::map<std::string, int> ingest_replay(std::istream& in);

}  // namespace flora
