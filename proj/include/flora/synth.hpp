#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flora/config.hpp"
#include "flora/trace.hpp"

namespace flora {

/// Parametric runtime model of one synthetic job.
///
/// runtime = 3600 * base_work_core_hours * ((1 - p) + p / total_cores) * penalty(cached)
///           + node_count * per_node_overhead_seconds
///
/// with cached = min(1, total_mem_gib / cache_need_gib) and penalty interpolating linearly from
/// cache_miss_penalty (nothing cached) down to 1 (fully cached). Class B jobs need no cache, so their
/// penalty is identically 1.
struct SynthJobParams {
  std::string algorithm;
  double dataset_gib = 1.0;
  JobClass job_class = JobClass::B;
  double base_work_core_hours = 1.0;
  double parallel_fraction = 1.0;
  double cache_need_gib = 0.0;
  double cache_miss_penalty = 1.0;
  double per_node_overhead_seconds = 0.0;

  void validate() const;  // throws validation_error
  JobSpec spec() const { return {algorithm, dataset_gib, job_class}; }
};

double synth_runtime(const SynthJobParams& params, const CloudConfig& config);

struct NoiseOptions {
  double relative_sigma = 0.0;  // sigma of the log-normal multiplier; 0 gives exact model values
  std::uint64_t seed = 0;
};

/// One record (run_index 0) per job and config. Noise for a cell is drawn from a generator seeded by
/// (seed, job_id, config_id), so results do not depend on iteration order.
ProfilingTrace generate_trace(std::span<const SynthJobParams> params, const ConfigCatalog& catalog, NoiseOptions noise);

struct SynthScenario {
  std::vector<SynthJobParams> jobs;
  std::optional<ConfigCatalog> catalog;
  std::optional<NoiseOptions> noise;
};

// JSON: {"jobs":[{"algorithm":..,"dataset_gib":..,"class":"A",...}], "configs":[...]?, "noise":{...}?}
SynthScenario parse_scenario(std::istream& in);

}  // namespace flora
