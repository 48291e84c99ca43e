#include "flora/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "flora/detail/parallel.hpp"
#include "flora/error.hpp"
#include "flora/format.hpp"

namespace flora {

const PolicyAggregate* EvaluationReport::find(std::string_view policy) const {
  for (const auto& a : aggregate) {
    if (a.policy == policy) return &a;
  }
  return nullptr;
}

const JobResult* EvaluationReport::find(std::string_view policy, std::string_view job_id) const {
  for (const auto& r : per_job) {
    if (r.policy == policy && r.job_id == job_id) return &r;
  }
  return nullptr;
}

namespace {

struct JobRows {
  std::vector<double> cost;
  std::vector<double> runtime;
  double min_cost = 0.0;
  double min_runtime = 0.0;
};

JobRows job_rows(const ProfilingTrace& trace, std::size_t j, std::span<const double> hourly) {
  JobRows rows;
  const auto n = trace.catalog().size();
  rows.cost.resize(n);
  rows.runtime.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    rows.runtime[c] = *trace.runtime(j, c);
    rows.cost[c] = rows.runtime[c] / 3600.0 * hourly[c];
  }
  rows.min_cost = *std::min_element(rows.cost.begin(), rows.cost.end());
  rows.min_runtime = *std::min_element(rows.runtime.begin(), rows.runtime.end());
  if (!(rows.min_cost > 0.0)) {
    throw validation_error("degenerate prices: normalization undefined for job " + trace.jobs()[j].job_id());
  }
  return rows;
}

}  // namespace

EvaluationReport evaluate(const ProfilingTrace& trace, const PriceModel& prices,
                          std::span<const SelectionPolicy> policies, EvaluateOptions options) {
  const auto& catalog = trace.catalog();
  if (catalog.empty()) throw validation_error("evaluate: empty config catalog");
  check_price_coverage(prices, catalog);

  EvaluationReport report;
  report.price_model_as_of = prices.as_of();
  report.total_jobs = trace.jobs().size();

  std::vector<double> hourly(catalog.size());
  for (std::size_t c = 0; c < catalog.size(); ++c) hourly[c] = hourly_cost(catalog.configs()[c], prices);

  std::vector<std::size_t> evaluated;
  for (std::size_t j = 0; j < trace.jobs().size(); ++j) {
    if (trace.job_complete(j)) {
      evaluated.push_back(j);
    } else {
      if (trace.mode() == TraceMode::strict) throw validation_error("job " + trace.jobs()[j].job_id() + " is missing cells");
      report.notices.push_back("skipped incomplete job " + trace.jobs()[j].job_id());
    }
  }

  std::vector<JobRows> rows(evaluated.size());
  for (std::size_t i = 0; i < evaluated.size(); ++i) rows[i] = job_rows(trace, evaluated[i], hourly);

  const std::size_t n_jobs = evaluated.size();
  const std::size_t n_tasks = policies.size() * n_jobs;
  std::vector<std::optional<JobResult>> results(n_tasks);
  detail::parallel_for(n_tasks, options.threads, [&](std::size_t task) {
    const auto& policy = policies[task / n_jobs];
    const auto i = task % n_jobs;
    const auto& job = trace.jobs()[evaluated[i]];
    const auto& row = rows[i];

    JobResult result;
    result.job_id = job.job_id();
    result.policy = policy.name();
    if (policy.kind() == SelectionPolicy::Kind::random_expectation) {
      double cost = 0.0;
      double runtime = 0.0;
      for (std::size_t c = 0; c < row.cost.size(); ++c) {
        cost += row.cost[c] / row.min_cost;
        runtime += row.runtime[c] / row.min_runtime;
      }
      result.normalized_cost = cost / static_cast<double>(row.cost.size());
      result.normalized_runtime = runtime / static_cast<double>(row.cost.size());
      results[task] = std::move(result);
      return;
    }
    if (policy.kind() == SelectionPolicy::Kind::replay && !policy.replay_selection(result.job_id)) return;

    const int selected = select(policy, job, trace, prices, catalog);
    const auto ci = catalog.index_of(selected);
    if (!ci) {
      throw validation_error("policy '" + policy.name() + "' selected unknown config_id " + std::to_string(selected) +
                             " for job " + result.job_id);
    }
    result.selected_config_id = selected;
    result.normalized_cost = row.cost[*ci] / row.min_cost;
    result.normalized_runtime = row.runtime[*ci] / row.min_runtime;
    results[task] = std::move(result);
  });

  for (std::size_t p = 0; p < policies.size(); ++p) {
    PolicyAggregate agg;
    agg.policy = policies[p].name();
    agg.label = policies[p].label();
    double cost_sum = 0.0;
    double runtime_sum = 0.0;
    for (std::size_t i = 0; i < n_jobs; ++i) {
      auto& r = results[p * n_jobs + i];
      if (!r) continue;
      cost_sum += r->normalized_cost;
      runtime_sum += r->normalized_runtime;
      ++agg.jobs;
      report.per_job.push_back(std::move(*r));
    }
    if (agg.jobs > 0) {
      agg.mean_cost = cost_sum / static_cast<double>(agg.jobs);
      agg.mean_runtime = runtime_sum / static_cast<double>(agg.jobs);
    } else {
      agg.mean_cost = agg.mean_runtime = std::numeric_limits<double>::quiet_NaN();
    }
    if (agg.jobs < n_jobs) {
      report.notices.push_back("policy '" + agg.policy + "' evaluated on " + std::to_string(agg.jobs) + " of " +
                               std::to_string(n_jobs) + " jobs");
    }
    report.aggregate.push_back(std::move(agg));
  }
  return report;
}

std::vector<double> log_grid(double lo, double hi, int points_per_decade) {
  if (!(lo > 0.0) || !(hi >= lo) || points_per_decade <= 0) {
    throw validation_error("log_grid needs 0 < lo <= hi and points_per_decade > 0");
  }
  std::vector<double> grid;
  const double start = std::log10(lo);
  const double stop = std::log10(hi);
  const auto steps = static_cast<long>(std::floor((stop - start) * points_per_decade + 1e-9));
  for (long i = 0; i <= steps; ++i) grid.push_back(std::pow(10.0, start + static_cast<double>(i) / points_per_decade));
  if (std::abs(grid.back() - hi) > 1e-12 * hi) grid.push_back(hi);
  else grid.back() = hi;
  grid.front() = lo;
  return grid;
}

SweepTable price_ratio_sweep(const ProfilingTrace& trace, std::span<const double> ratios, double anchor,
                             std::span<const SelectionPolicy> policies, EvaluateOptions options) {
  if (ratios.empty()) throw validation_error("price_ratio_sweep: empty ratio grid");
  for (double r : ratios) {
    if (!(r > 0.0)) throw validation_error("price_ratio_sweep: ratios must be > 0");
  }
  SweepTable table;
  table.ratios.assign(ratios.begin(), ratios.end());
  table.anchor = anchor;
  for (const auto& p : policies) {
    table.policies.push_back(p.name());
    table.labels.push_back(p.label());
  }
  for (double ratio : ratios) {
    auto report = evaluate(trace, model_from_ratio(ratio, anchor), policies, options);
    std::vector<double> row;
    for (const auto& agg : report.aggregate) row.push_back(agg.mean_cost);
    table.mean_cost.push_back(std::move(row));
    table.reports.push_back(std::move(report));
  }
  return table;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr auto saturated = std::numeric_limits<std::uint64_t>::max();
  // after step i, acc == C(n - k + i, i), so every division is exact
  std::uint64_t acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t factor = n - k + i;
    const std::uint64_t g = std::gcd(acc, i);
    const std::uint64_t reduced = acc / g;
    const std::uint64_t rest = factor / (i / g);
    if (reduced > saturated / rest) return saturated;
    acc = reduced * rest;
  }
  return acc;
}

namespace {

// Mean over jobs in trace order, flipped jobs contributing their wrong-class value.
double subset_mean(std::span<const double> correct, std::span<const double> wrong, std::span<const char> flip) {
  double sum = 0.0;
  for (std::size_t j = 0; j < correct.size(); ++j) sum += flip[j] ? wrong[j] : correct[j];
  return sum / static_cast<double>(correct.size());
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

MisclassificationStudy misclassification_study(const ProfilingTrace& trace, const PriceModel& prices,
                                               std::span<const int> k_values, SamplingOptions sampling,
                                               EvaluateOptions options) {
  // A job's selection depends only on its own label (test-job labels never change), so each job's
  // outcome under either label is computed once and subsets only choose between the two.
  const std::vector<SelectionPolicy> policies{SelectionPolicy::flora(), SelectionPolicy::flora_inverted(),
                                              SelectionPolicy::fw1c()};
  const auto report = evaluate(trace, prices, policies, options);

  MisclassificationStudy study;
  study.price_model_as_of = report.price_model_as_of;
  study.fw1c_mean_cost = report.find("fw1c")->mean_cost;

  std::vector<double> correct;
  std::vector<double> wrong;
  for (const auto& r : report.per_job) {
    if (r.policy == "flora") correct.push_back(r.normalized_cost);
    if (r.policy == "flora_inverted") wrong.push_back(r.normalized_cost);
  }
  const auto n = correct.size();
  study.n_jobs = n;
  if (n == 0) throw validation_error("misclassification_study: no evaluable jobs");

  for (int k : k_values) {
    if (k < 0 || static_cast<std::size_t>(k) > n) {
      throw validation_error("misclassification_study: k=" + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
    }
  }

  study.points.resize(k_values.size());
  detail::parallel_for(k_values.size(), options.threads, [&](std::size_t idx) {
    const int k = k_values[idx];
    MisclassificationPoint point;
    point.k = k;
    const auto total = binomial(n, static_cast<std::uint64_t>(k));
    std::vector<char> flip(n, 0);
    if (total <= sampling.exhaustive_threshold) {
      // walk all k-subsets in lexicographic order via prev_permutation over a 1..10..0 mask
      std::fill(flip.begin(), flip.begin() + k, 1);
      double sum = 0.0;
      std::uint64_t count = 0;
      do {
        sum += subset_mean(correct, wrong, flip);
        ++count;
      } while (std::prev_permutation(flip.begin(), flip.end()));
      point.mean_cost = sum / static_cast<double>(count);
      point.subsets = count;
      point.exhaustive = true;
    } else {
      if (sampling.samples < 2) throw validation_error("misclassification_study: need at least 2 Monte Carlo samples");
      std::mt19937_64 rng(splitmix64(sampling.seed ^ splitmix64(static_cast<std::uint64_t>(k))));
      std::vector<std::size_t> order(n);
      double sum = 0.0;
      double sum_sq = 0.0;
      for (std::size_t s = 0; s < sampling.samples; ++s) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::fill(flip.begin(), flip.end(), 0);
        for (int i = 0; i < k; ++i) {
          std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i), n - 1);
          std::swap(order[static_cast<std::size_t>(i)], order[pick(rng)]);
          flip[order[static_cast<std::size_t>(i)]] = 1;
        }
        const double m = subset_mean(correct, wrong, flip);
        sum += m;
        sum_sq += m * m;
      }
      const double count = static_cast<double>(sampling.samples);
      point.mean_cost = sum / count;
      const double var = std::max(0.0, (sum_sq - sum * sum / count) / (count - 1.0));
      point.std_error = std::sqrt(var / count);
      point.subsets = sampling.samples;
      point.exhaustive = false;
    }
    study.points[idx] = point;
  });
  return study;
}

}  // namespace flora
