#include "flora/synth.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <random>

#include <json.hpp>

#include "flora/error.hpp"

namespace flora {

void SynthJobParams::validate() const {
  const auto id = "synthetic job " + make_job_id(algorithm, dataset_gib);
  if (algorithm.empty()) throw validation_error("synthetic job with empty algorithm");
  if (!(dataset_gib > 0.0)) throw validation_error(id + ": dataset_gib must be > 0");
  if (!(base_work_core_hours > 0.0)) throw validation_error(id + ": base_work_core_hours must be > 0");
  if (!(parallel_fraction >= 0.0 && parallel_fraction <= 1.0)) throw validation_error(id + ": parallel_fraction outside [0, 1]");
  if (!(cache_need_gib >= 0.0)) throw validation_error(id + ": cache_need_gib must be >= 0");
  if (!(cache_miss_penalty >= 1.0)) throw validation_error(id + ": cache_miss_penalty must be >= 1");
  if (!(per_node_overhead_seconds >= 0.0)) throw validation_error(id + ": per_node_overhead_seconds must be >= 0");
  if (job_class == JobClass::B && cache_need_gib != 0.0) throw validation_error(id + ": class B jobs have no cache need");
}

double synth_runtime(const SynthJobParams& params, const CloudConfig& config) {
  const double cores = config.total_cores();
  const double amdahl = (1.0 - params.parallel_fraction) + params.parallel_fraction / cores;
  double penalty = 1.0;
  if (params.job_class == JobClass::A && params.cache_need_gib > 0.0) {
    const double cached = std::min(1.0, config.total_mem_gib() / params.cache_need_gib);
    penalty = params.cache_miss_penalty - (params.cache_miss_penalty - 1.0) * cached;
  }
  return 3600.0 * params.base_work_core_hours * amdahl * penalty + config.node_count * params.per_node_overhead_seconds;
}

namespace {

std::uint64_t fnv1a(std::string_view text, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

ProfilingTrace generate_trace(std::span<const SynthJobParams> params, const ConfigCatalog& catalog, NoiseOptions noise) {
  if (params.empty() || catalog.empty()) throw validation_error("generate_trace needs jobs and configs");
  if (!(noise.relative_sigma >= 0.0)) throw validation_error("generate_trace: relative_sigma must be >= 0");

  std::vector<JobSpec> jobs;
  std::vector<TraceRecord> records;
  for (const auto& p : params) {
    p.validate();
    jobs.push_back(p.spec());
    const auto job_id = p.spec().job_id();
    for (const auto& config : catalog) {
      double runtime = synth_runtime(p, config);
      if (noise.relative_sigma > 0.0) {
        const auto cell = job_id + "#" + std::to_string(config.id);
        std::mt19937_64 rng(fnv1a(cell, noise.seed ^ 0xcbf29ce484222325ULL));
        std::lognormal_distribution<double> factor(0.0, noise.relative_sigma);
        runtime *= factor(rng);
      }
      records.push_back({job_id, config.id, runtime, 0});
    }
  }
  return ProfilingTrace::build(catalog, std::move(jobs), std::move(records));
}

SynthScenario parse_scenario(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("scenario: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("jobs") || !doc["jobs"].is_array()) {
    throw parse_error("scenario: expected an object with a \"jobs\" array");
  }

  SynthScenario scenario;
  try {
    for (const auto& j : doc["jobs"]) {
      SynthJobParams p;
      p.algorithm = j.at("algorithm").get<std::string>();
      p.dataset_gib = j.value("dataset_gib", 1.0);
      p.job_class = parse_job_class(j.at("class").get<std::string>());
      p.base_work_core_hours = j.at("base_work_core_hours").get<double>();
      p.parallel_fraction = j.value("parallel_fraction", 1.0);
      p.cache_need_gib = j.value("cache_need_gib", 0.0);
      p.cache_miss_penalty = j.value("cache_miss_penalty", 1.0);
      p.per_node_overhead_seconds = j.value("per_node_overhead_seconds", 0.0);
      p.validate();
      scenario.jobs.push_back(std::move(p));
    }
    if (doc.contains("configs")) {
      std::vector<CloudConfig> configs;
      for (const auto& c : doc["configs"]) {
        configs.push_back({c.at("config_id").get<int>(), c.at("instance_type").get<std::string>(),
                           c.at("node_count").get<int>(), c.at("cores_per_node").get<int>(),
                           c.at("mem_gib_per_node").get<double>()});
      }
      scenario.catalog = ConfigCatalog(std::move(configs));
    }
    if (doc.contains("noise")) {
      NoiseOptions noise;
      noise.relative_sigma = doc["noise"].value("relative_sigma", 0.0);
      noise.seed = doc["noise"].value("seed", std::uint64_t{0});
      scenario.noise = noise;
    }
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("scenario: ") + e.what());
  }
  if (scenario.jobs.empty()) throw validation_error("scenario: no jobs");
  return scenario;
}

}  // namespace flora
