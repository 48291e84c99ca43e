#include "flora/trace.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

#include "flora/csv.hpp"
#include "flora/error.hpp"
#include "flora/format.hpp"

namespace flora {

std::string_view to_string(JobClass job_class) { return job_class == JobClass::A ? "A" : "B"; }

JobClass parse_job_class(std::string_view text) {
  text = trim(text);
  if (text == "A") return JobClass::A;
  if (text == "B") return JobClass::B;
  throw parse_error("job class must be 'A' or 'B', got '" + std::string(text) + "'");
}

std::string make_job_id(std::string_view algorithm, double dataset_gib) {
  return std::string(algorithm) + "/" + format_number(dataset_gib);
}

std::string JobSpec::job_id() const { return make_job_id(algorithm, dataset_gib); }

double median(std::vector<double> values) {
  if (values.empty()) throw validation_error("median of an empty set");
  std::sort(values.begin(), values.end());
  const auto n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::string describe_missing(std::span<const CellRef> cells, std::size_t limit) {
  std::string out;
  for (std::size_t i = 0; i < cells.size() && i < limit; ++i) {
    if (!out.empty()) out += ", ";
    out += cells[i].job_id + "@#" + std::to_string(cells[i].config_id);
  }
  if (cells.size() > limit) out += ", ... (" + std::to_string(cells.size() - limit) + " more)";
  return out;
}

ProfilingTrace ProfilingTrace::build(ConfigCatalog catalog, std::vector<JobSpec> jobs,
                                     std::vector<TraceRecord> records, TraceMode mode) {
  ProfilingTrace t;
  t.catalog_ = std::move(catalog);
  t.mode_ = mode;

  std::sort(jobs.begin(), jobs.end(), [](const JobSpec& a, const JobSpec& b) {
    return std::tie(a.algorithm, a.dataset_gib) < std::tie(b.algorithm, b.dataset_gib);
  });
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!(jobs[i].dataset_gib > 0.0)) throw validation_error("job " + jobs[i].job_id() + ": non-positive dataset_gib");
    if (jobs[i].algorithm.empty()) throw validation_error("job with empty algorithm name");
    if (i > 0 && jobs[i].algorithm == jobs[i - 1].algorithm && jobs[i].dataset_gib == jobs[i - 1].dataset_gib) {
      throw validation_error("duplicate job " + jobs[i].job_id());
    }
  }
  t.jobs_ = std::move(jobs);
  t.job_ids_.reserve(t.jobs_.size());
  for (const auto& j : t.jobs_) t.job_ids_.push_back(j.job_id());
  {
    std::set<std::string_view> ids(t.job_ids_.begin(), t.job_ids_.end());
    if (ids.size() != t.job_ids_.size()) throw validation_error("job ids are not unique");
  }

  const auto n_configs = t.catalog_.size();
  std::vector<std::vector<double>> runs(t.jobs_.size() * n_configs);
  std::set<std::tuple<std::string, int, int>> seen;
  for (const auto& r : records) {
    const auto ji = t.job_index(r.job_id);
    if (!ji) throw validation_error("record references unknown job " + r.job_id);
    const auto ci = t.catalog_.index_of(r.config_id);
    if (!ci) throw validation_error("record for " + r.job_id + " references unknown config_id " + std::to_string(r.config_id));
    if (!(r.runtime_seconds > 0.0)) {
      throw validation_error("record " + r.job_id + "@#" + std::to_string(r.config_id) + ": runtime must be > 0");
    }
    if (r.run_index < 0) throw validation_error("record " + r.job_id + ": negative run_index");
    if (!seen.emplace(r.job_id, r.config_id, r.run_index).second) {
      throw validation_error("duplicate record " + r.job_id + "@#" + std::to_string(r.config_id) + " run " +
                             std::to_string(r.run_index));
    }
    runs[*ji * n_configs + *ci].push_back(r.runtime_seconds);
  }

  t.cells_.resize(runs.size());
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (!runs[i].empty()) t.cells_[i] = median(std::move(runs[i]));
  }

  std::sort(records.begin(), records.end(), [](const TraceRecord& a, const TraceRecord& b) {
    return std::tie(a.job_id, a.config_id, a.run_index) < std::tie(b.job_id, b.config_id, b.run_index);
  });
  t.records_ = std::move(records);

  if (mode == TraceMode::strict && !t.complete()) {
    const auto missing = t.missing_cells();
    throw validation_error("incomplete trace: " + std::to_string(missing.size()) +
                           " missing cell(s): " + describe_missing(missing));
  }
  return t;
}

std::optional<std::size_t> ProfilingTrace::job_index(std::string_view job_id) const {
  for (std::size_t i = 0; i < job_ids_.size(); ++i) {
    if (job_ids_[i] == job_id) return i;
  }
  return std::nullopt;
}

const JobSpec& ProfilingTrace::job(std::string_view job_id) const {
  if (const auto i = job_index(job_id)) return jobs_[*i];
  throw validation_error("unknown job " + std::string(job_id));
}

std::optional<double> ProfilingTrace::runtime(std::string_view job_id, int config_id) const {
  const auto ji = job_index(job_id);
  const auto ci = catalog_.index_of(config_id);
  if (!ji || !ci) return std::nullopt;
  return runtime(*ji, *ci);
}

bool ProfilingTrace::job_complete(std::size_t job_index) const {
  const auto r = row(job_index);
  return std::all_of(r.begin(), r.end(), [](const auto& v) { return v.has_value(); });
}

bool ProfilingTrace::complete() const {
  return std::all_of(cells_.begin(), cells_.end(), [](const auto& v) { return v.has_value(); });
}

std::vector<CellRef> ProfilingTrace::missing_cells() const {
  std::vector<CellRef> out;
  for (std::size_t j = 0; j < jobs_.size(); ++j) {
    for (std::size_t c = 0; c < catalog_.size(); ++c) {
      if (!runtime(j, c)) out.push_back({job_ids_[j], catalog_.configs()[c].id});
    }
  }
  return out;
}

std::size_t ProfilingTrace::cell_count() const {
  return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [](const auto& v) { return v.has_value(); }));
}

ProfilingTrace ProfilingTrace::filter_jobs(const std::function<bool(const JobSpec&)>& keep) const {
  ProfilingTrace t;
  t.catalog_ = catalog_;
  t.mode_ = mode_;
  const auto n_configs = catalog_.size();
  std::set<std::string_view> kept;
  for (std::size_t j = 0; j < jobs_.size(); ++j) {
    if (!keep(jobs_[j])) continue;
    t.jobs_.push_back(jobs_[j]);
    t.job_ids_.push_back(job_ids_[j]);
    t.cells_.insert(t.cells_.end(), cells_.begin() + j * n_configs, cells_.begin() + (j + 1) * n_configs);
  }
  kept.insert(t.job_ids_.begin(), t.job_ids_.end());
  for (const auto& r : records_) {
    if (kept.contains(r.job_id)) t.records_.push_back(r);
  }
  return t;
}

ProfilingTrace ingest_trace(std::istream& in, const ConfigCatalog& catalog, TraceMode mode) {
  const auto rows = csv::read_table(
      in, {"algorithm", "dataset_gib", "class", "config_id", "runtime_seconds", "run_index"}, "trace CSV");

  std::map<std::string, JobSpec> jobs;
  std::vector<TraceRecord> records;
  records.reserve(rows.size());
  for (const auto& row : rows) {
    const auto where = "trace CSV line " + std::to_string(row.line);
    JobSpec spec;
    spec.algorithm = std::string(trim(row.fields[0]));
    if (spec.algorithm.empty()) throw validation_error(where + ": empty algorithm");
    if (!parse_double(row.fields[1], spec.dataset_gib)) throw parse_error(where + ": cannot parse dataset_gib");
    if (!(spec.dataset_gib > 0.0)) throw validation_error(where + ": non-positive dataset_gib");
    try {
      spec.job_class = parse_job_class(row.fields[2]);
    } catch (const parse_error& e) {
      throw parse_error(where + ": " + e.what());
    }

    TraceRecord rec;
    rec.job_id = spec.job_id();
    long long id = 0;
    if (!parse_int(row.fields[3], id)) throw parse_error(where + ": cannot parse config_id");
    rec.config_id = static_cast<int>(id);
    if (!catalog.find(rec.config_id)) throw validation_error(where + ": unknown config_id " + std::to_string(id));
    if (!parse_double(row.fields[4], rec.runtime_seconds)) throw parse_error(where + ": cannot parse runtime_seconds");
    if (!(rec.runtime_seconds > 0.0)) throw validation_error(where + ": runtime_seconds must be > 0");
    long long run = 0;
    if (!parse_int(row.fields[5], run)) throw parse_error(where + ": cannot parse run_index");
    if (run < 0) throw validation_error(where + ": negative run_index");
    rec.run_index = static_cast<int>(run);

    auto [it, inserted] = jobs.emplace(rec.job_id, spec);
    if (!inserted && it->second.job_class != spec.job_class) {
      throw validation_error(where + ": inconsistent class for job " + rec.job_id);
    }
    records.push_back(std::move(rec));
  }

  std::vector<JobSpec> job_list;
  job_list.reserve(jobs.size());
  for (auto& [_, spec] : jobs) job_list.push_back(std::move(spec));
  return ProfilingTrace::build(catalog, std::move(job_list), std::move(records), mode);
}

void write_trace_csv(std::ostream& out, const ProfilingTrace& trace) {
  out << "algorithm,dataset_gib,class,config_id,runtime_seconds,run_index\n";
  for (const auto& r : trace.records()) {
    const auto& job = trace.job(r.job_id);
    out << csv::escape(job.algorithm) << ',' << format_number(job.dataset_gib) << ',' << to_string(job.job_class) << ','
        << r.config_id << ',' << format_number(r.runtime_seconds) << ',' << r.run_index << '\n';
  }
}

}  // namespace flora
