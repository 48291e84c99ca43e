#include "flora/selector.hpp"

#include <algorithm>
#include <functional>

#include "flora/csv.hpp"
#include "flora/error.hpp"
#include "flora/format.hpp"

namespace flora {

ProfilingTrace filter_test_jobs(const ProfilingTrace& trace, std::optional<JobClass> target_class,
                                std::optional<std::string_view> excluded_algorithm) {
  auto filtered = trace.filter_jobs([&](const JobSpec& job) {
    if (target_class && job.job_class != *target_class) return false;
    if (excluded_algorithm && job.algorithm == *excluded_algorithm) return false;
    return true;
  });
  if (filtered.jobs().empty()) {
    std::string why = "no applicable test jobs";
    if (target_class) why += " of class " + std::string(to_string(*target_class));
    if (excluded_algorithm) why += " after excluding algorithm '" + std::string(*excluded_algorithm) + "'";
    throw validation_error(why);
  }
  return filtered;
}

ConfigRanking rank_configurations(const ProfilingTrace& test_jobs, const PriceModel& prices) {
  const auto& catalog = test_jobs.catalog();
  if (catalog.empty()) throw validation_error("rank_configurations: empty config catalog");
  check_price_coverage(prices, catalog);

  std::vector<double> hourly(catalog.size());
  for (std::size_t c = 0; c < catalog.size(); ++c) hourly[c] = hourly_cost(catalog.configs()[c], prices);

  ConfigRanking ranking;
  std::vector<double> scores(catalog.size(), 0.0);
  std::vector<double> costs(catalog.size());
  for (std::size_t j = 0; j < test_jobs.jobs().size(); ++j) {
    const auto id = test_jobs.jobs()[j].job_id();
    if (!test_jobs.job_complete(j)) {
      if (test_jobs.mode() == TraceMode::strict) throw validation_error("test job " + id + " is missing cells");
      ranking.dropped_jobs.push_back(id);
      continue;
    }
    for (std::size_t c = 0; c < catalog.size(); ++c) costs[c] = *test_jobs.runtime(j, c) / 3600.0 * hourly[c];
    const double cheapest = *std::min_element(costs.begin(), costs.end());
    if (!(cheapest > 0.0)) throw validation_error("degenerate prices: normalization undefined for test job " + id);
    for (std::size_t c = 0; c < catalog.size(); ++c) scores[c] += costs[c] / cheapest;
    ++ranking.test_jobs;
  }
  if (ranking.test_jobs == 0) throw validation_error("no applicable test jobs");

  ranking.entries.reserve(catalog.size());
  for (std::size_t c = 0; c < catalog.size(); ++c) ranking.entries.push_back({catalog.configs()[c].id, scores[c]});
  std::sort(ranking.entries.begin(), ranking.entries.end(), [](const RankEntry& a, const RankEntry& b) {
    return a.score != b.score ? a.score < b.score : a.config_id < b.config_id;
  });
  ranking.selected = ranking.entries.front().config_id;
  return ranking;
}

SelectionPolicy SelectionPolicy::replay(std::string name, std::map<std::string, int> selections) {
  if (name.empty()) throw validation_error("replay policy needs a name");
  SelectionPolicy p(Kind::replay, std::move(name));
  p.replay_.insert(selections.begin(), selections.end());
  return p;
}

SelectionPolicy SelectionPolicy::parse(std::string_view key) {
  for (auto p : {flora(), flora_inverted(), fw1c(), min_cpu(), max_cpu(), min_mem(), max_mem(), random_expectation()}) {
    if (p.name() == key) return p;
  }
  throw parse_error("unknown policy '" + std::string(key) +
                    "' (expected flora, flora_inverted, fw1c, min_cpu, max_cpu, min_mem, max_mem, random)");
}

std::string SelectionPolicy::label() const {
  switch (kind_) {
    case Kind::flora: return "Flora";
    case Kind::flora_inverted: return "Flora (inverted classes)";
    case Kind::fw1c: return "Flora with one class";
    case Kind::min_cpu: return "minimize CPU";
    case Kind::max_cpu: return "maximize CPU";
    case Kind::min_mem: return "minimize memory";
    case Kind::max_mem: return "maximize memory";
    case Kind::random_expectation: return "random selection";
    case Kind::replay: return name_;
  }
  return name_;
}

std::optional<int> SelectionPolicy::replay_selection(std::string_view job_id) const {
  const auto it = replay_.find(job_id);
  if (it == replay_.end()) return std::nullopt;
  return it->second;
}

std::vector<SelectionPolicy> standard_policies() {
  return {SelectionPolicy::flora(),   SelectionPolicy::fw1c(),    SelectionPolicy::max_mem(),
          SelectionPolicy::max_cpu(), SelectionPolicy::min_mem(), SelectionPolicy::random_expectation(),
          SelectionPolicy::min_cpu()};
}

namespace {

template <typename Key, typename Better>
int extreme_config(const ConfigCatalog& catalog, Key key, Better better) {
  if (catalog.empty()) throw validation_error("empty config catalog");
  // catalog is sorted by id, so keeping the first strict improvement breaks ties by ascending id
  const CloudConfig* best = &catalog.configs().front();
  for (const auto& c : catalog) {
    if (better(key(c), key(*best))) best = &c;
  }
  return best->id;
}

}  // namespace

int select(const SelectionPolicy& policy, const JobSpec& job, const ProfilingTrace& trace, const PriceModel& prices,
           const ConfigCatalog& catalog) {
  using Kind = SelectionPolicy::Kind;
  const auto cores = [](const CloudConfig& c) { return static_cast<double>(c.total_cores()); };
  const auto mem = [](const CloudConfig& c) { return c.total_mem_gib(); };
  switch (policy.kind()) {
    case Kind::flora:
      return rank_configurations(filter_test_jobs(trace, job.job_class, job.algorithm), prices).selected;
    case Kind::flora_inverted:
      return rank_configurations(filter_test_jobs(trace, flipped(job.job_class), job.algorithm), prices).selected;
    case Kind::fw1c:
      return rank_configurations(filter_test_jobs(trace, std::nullopt, job.algorithm), prices).selected;
    case Kind::min_cpu: return extreme_config(catalog, cores, std::less<>{});
    case Kind::max_cpu: return extreme_config(catalog, cores, std::greater<>{});
    case Kind::min_mem: return extreme_config(catalog, mem, std::less<>{});
    case Kind::max_mem: return extreme_config(catalog, mem, std::greater<>{});
    case Kind::random_expectation:
      throw validation_error("expectation policy has no point selection");
    case Kind::replay: {
      const auto id = job.job_id();
      const auto sel = policy.replay_selection(id);
      if (!sel) throw validation_error("replay policy '" + policy.name() + "' has no selection for job " + id);
      return *sel;
    }
  }
  throw validation_error("unhandled selection policy");
}

std::map<std::string, int> ingest_replay(std::istream& in) {
  const auto rows = csv::read_table(in, {"job_id", "config_id"}, "replay CSV");
  std::map<std::string, int> out;
  for (const auto& row : rows) {
    const auto where = "replay CSV line " + std::to_string(row.line);
    long long id = 0;
    if (!parse_int(row.fields[1], id)) throw parse_error(where + ": cannot parse config_id");
    const std::string job_id(trim(row.fields[0]));
    if (!out.emplace(job_id, static_cast<int>(id)).second) throw validation_error(where + ": duplicate job " + job_id);
  }
  return out;
}

}  // namespace flora
