#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flora/config.hpp"

namespace flora {

/// Data access pattern class of a job.
/// A: repeated or state-dependent data loading (memory-demanding).
/// B: single, order-independent data loading (memory-yielding).
enum class JobClass { A, B };

std::string_view to_string(JobClass job_class);
JobClass parse_job_class(std::string_view text);  // "A" or "B", throws parse_error otherwise
constexpr JobClass flipped(JobClass c) { return c == JobClass::A ? JobClass::B : JobClass::A; }

/// A job is identified by its algorithm and input size.
struct JobSpec {
  std::string algorithm;
  double dataset_gib = 0.0;
  JobClass job_class = JobClass::A;

  std::string job_id() const;  // "<algorithm>/<dataset_gib>"

  bool operator==(const JobSpec&) const = default;
};

std::string make_job_id(std::string_view algorithm, double dataset_gib);

struct TraceRecord {
  std::string job_id;
  int config_id = 0;
  double runtime_seconds = 0.0;
  int run_index = 0;

  bool operator==(const TraceRecord&) const = default;
};

struct CellRef {
  std::string job_id;
  int config_id = 0;
};

enum class TraceMode { strict, lenient };

// Median with the even-count convention: mean of the two central values.
double median(std::vector<double> values);

/// Profiling runtimes of test jobs across a config catalog, aggregated per (job, config) cell by median.
///
/// Jobs are kept in ascending (algorithm, dataset_gib) order; cells are stored densely as
/// jobs x configs in catalog order. Immutable once built.
class ProfilingTrace {
 public:
  ProfilingTrace() = default;

  // Validates references and uniqueness, aggregates repeated runs. In strict mode an incomplete
  // trace is rejected with the list of missing cells.
  static ProfilingTrace build(ConfigCatalog catalog, std::vector<JobSpec> jobs, std::vector<TraceRecord> records,
                              TraceMode mode = TraceMode::strict);

  const ConfigCatalog& catalog() const { return catalog_; }
  const std::vector<JobSpec>& jobs() const { return jobs_; }
  const std::vector<TraceRecord>& records() const { return records_; }
  TraceMode mode() const { return mode_; }

  std::optional<std::size_t> job_index(std::string_view job_id) const;
  const JobSpec& job(std::string_view job_id) const;

  // Aggregated runtime in seconds, or nullopt for a missing cell.
  std::optional<double> runtime(std::size_t job_index, std::size_t config_index) const {
    return cells_[job_index * catalog_.size() + config_index];
  }
  std::optional<double> runtime(std::string_view job_id, int config_id) const;
  std::span<const std::optional<double>> row(std::size_t job_index) const {
    return {cells_.data() + job_index * catalog_.size(), catalog_.size()};
  }

  bool job_complete(std::size_t job_index) const;
  bool complete() const;
  std::vector<CellRef> missing_cells() const;
  std::size_t cell_count() const;  // number of populated cells

  // Subset of jobs (with their records) satisfying `keep`; catalog and mode carried over.
  ProfilingTrace filter_jobs(const std::function<bool(const JobSpec&)>& keep) const;

 private:
  ConfigCatalog catalog_;
  std::vector<JobSpec> jobs_;
  std::vector<std::string> job_ids_;
  std::vector<TraceRecord> records_;
  std::vector<std::optional<double>> cells_;
  TraceMode mode_ = TraceMode::strict;
};

// Header: algorithm,dataset_gib,class,config_id,runtime_seconds,run_index
ProfilingTrace ingest_trace(std::istream& in, const ConfigCatalog& catalog, TraceMode mode = TraceMode::strict);
void write_trace_csv(std::ostream& out, const ProfilingTrace& trace);

std::string describe_missing(std::span<const CellRef> cells, std::size_t limit = 20);

}  // namespace flora
