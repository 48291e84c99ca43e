#pragma once

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "flora/flora.hpp"

namespace flora::test {

inline const char* kPublishedConfigs =
    "config_id,instance_type,node_count,cores_per_node,mem_gib_per_node\n"
    "1,n2-highcpu-8,8,8,8\n"
    "2,n2-standard-8,8,8,32\n"
    "3,n2-highmem-8,8,8,64\n"
    "4,n2-highmem-4,4,4,32\n"
    "5,n2-standard-8,4,8,32\n"
    "6,n2-highcpu-32,4,32,32\n"
    "7,n2-highmem-8,2,8,64\n"
    "8,n2-standard-4,8,4,16\n"
    "9,n2-standard-4,16,4,16\n"
    "10,n2-highcpu-8,16,8,8\n";

inline ConfigCatalog published_catalog() {
  std::istringstream in(kPublishedConfigs);
  return ingest_configs(in);
}

// Dense trace: runtimes[j][c] seconds for jobs[j] on catalog config index c (one run each).
inline ProfilingTrace trace_from_matrix(const ConfigCatalog& catalog, const std::vector<JobSpec>& jobs,
                                        const std::vector<std::vector<double>>& runtimes,
                                        TraceMode mode = TraceMode::strict) {
  std::vector<TraceRecord> records;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    for (std::size_t c = 0; c < catalog.size(); ++c) {
      if (runtimes[j][c] > 0.0) records.push_back({jobs[j].job_id(), catalog.configs()[c].id, runtimes[j][c], 0});
    }
  }
  return ProfilingTrace::build(catalog, jobs, std::move(records), mode);
}

// Job list shaped like the published trace: nine algorithms, two sizes each, with their classes.
inline std::vector<JobSpec> published_jobs() {
  return {{"Grep", 3010, JobClass::B},
          {"Grep", 6020, JobClass::B},
          {"Sort", 94, JobClass::A},
          {"Sort", 188, JobClass::A},
          {"Word Count", 39, JobClass::B},
          {"Word Count", 77, JobClass::B},
          {"K-Means", 102, JobClass::A},
          {"K-Means", 204, JobClass::A},
          {"Linear Regression", 229, JobClass::A},
          {"Linear Regression", 459, JobClass::A},
          {"Logistic Regression", 210, JobClass::A},
          {"Logistic Regression", 420, JobClass::A},
          {"Join", 85, JobClass::A},
          {"Join", 172, JobClass::A},
          {"GroupByCount", 280, JobClass::B},
          {"GroupByCount", 560, JobClass::B},
          {"SelectWhereOrderBy", 92, JobClass::B},
          {"SelectWhereOrderBy", 185, JobClass::B}};
}

// Synthetic parameters for the published job list: class A jobs need cache roughly proportional to
// their input, class B jobs are memory-flat.
inline std::vector<SynthJobParams> class_separated_params(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<SynthJobParams> out;
  for (const auto& job : published_jobs()) {
    SynthJobParams p;
    p.algorithm = job.algorithm;
    p.dataset_gib = job.dataset_gib;
    p.job_class = job.job_class;
    p.base_work_core_hours = 5.0 + 40.0 * unit(rng);
    if (job.job_class == JobClass::A) {
      p.parallel_fraction = 0.97 + 0.02 * unit(rng);
      p.cache_need_gib = 150.0 + 200.0 * unit(rng);
      p.cache_miss_penalty = 3.0 + 2.0 * unit(rng);
      p.per_node_overhead_seconds = 10.0 + 20.0 * unit(rng);
    } else {
      p.parallel_fraction = 0.95 + 0.04 * unit(rng);
      p.per_node_overhead_seconds = 5.0 + 20.0 * unit(rng);
    }
    out.push_back(p);
  }
  return out;
}

inline PriceModel reference_linear_prices() { return PriceModel::linear({0.03, 0.004, 0.0}, "synthetic"); }

// Random complete trace over `catalog` with `n_jobs` jobs of random class, for property tests.
inline ProfilingTrace random_trace(std::mt19937_64& rng, const ConfigCatalog& catalog, std::size_t n_algorithms,
                                   std::size_t sizes_per_algorithm = 2) {
  std::uniform_real_distribution<double> runtime(60.0, 20000.0);
  std::bernoulli_distribution coin(0.5);
  std::vector<JobSpec> jobs;
  std::vector<std::vector<double>> rt;
  for (std::size_t a = 0; a < n_algorithms; ++a) {
    const auto cls = coin(rng) ? JobClass::A : JobClass::B;
    for (std::size_t s = 0; s < sizes_per_algorithm; ++s) {
      jobs.push_back({"alg" + std::to_string(a), static_cast<double>(10 * (s + 1)), cls});
      std::vector<double> row;
      for (std::size_t c = 0; c < catalog.size(); ++c) row.push_back(std::round(runtime(rng) * 100.0) / 100.0);
      rt.push_back(row);
    }
  }
  return trace_from_matrix(catalog, jobs, rt);
}

}  // namespace flora::test
