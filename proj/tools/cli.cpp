// flora: cost-optimized cluster configuration selection from a shared profiling trace.
//
// Exit codes: 0 success, 1 domain/validation failure, 2 usage or parse failure.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli.hpp"
#include "flora/flora.hpp"
#include "flora/format.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct Inputs {
  std::string trace;
  std::string configs;
  std::string prices;
  bool lenient = false;
};

std::string env_or(const char* name, std::string fallback) {
  if (const char* v = std::getenv(name); v && *v) return v;
  return fallback;
}

void add_input_options(CLI::App& cmd, Inputs& in, bool trace, bool prices) {
  in.configs = env_or("FLORA_CONFIGS", "");
  in.trace = env_or("FLORA_TRACE", "");
  in.prices = env_or("FLORA_PRICES", "");
  cmd.add_option("--configs", in.configs, "config catalog CSV (env FLORA_CONFIGS)");
  if (trace) {
    cmd.add_option("--trace", in.trace, "profiling trace CSV (env FLORA_TRACE)");
    cmd.add_flag("--lenient", in.lenient, "accept traces with missing cells; affected jobs are skipped");
  }
  if (prices) cmd.add_option("--prices", in.prices, "price snapshot JSON (env FLORA_PRICES)");
}

std::string require(const std::string& value, const char* what) {
  if (value.empty()) throw flora::parse_error(std::string("missing required input: ") + what);
  return value;
}

flora::TraceMode mode_of(const Inputs& in) { return in.lenient ? flora::TraceMode::lenient : flora::TraceMode::strict; }

std::vector<flora::SelectionPolicy> parse_policies(const std::vector<std::string>& keys) {
  if (keys.empty()) return flora::standard_policies();
  std::vector<flora::SelectionPolicy> out;
  for (const auto& k : keys) out.push_back(flora::SelectionPolicy::parse(k));
  return out;
}

std::vector<flora::SelectionPolicy> parse_replays(const std::vector<std::string>& specs,
                                                  std::map<std::string, std::string>& manifest_inputs) {
  std::vector<flora::SelectionPolicy> out;
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw flora::parse_error("--replay expects NAME=PATH, got '" + spec + "'");
    const auto name = spec.substr(0, eq);
    const auto path = spec.substr(eq + 1);
    manifest_inputs["replay:" + name] = path;
    out.push_back(flora::SelectionPolicy::replay(name, flora::load_replay(path)));
  }
  return out;
}

void write_manifest(const fs::path& out_dir, flora::RunManifest manifest) {
  flora::write_file(out_dir / "manifest.json", manifest.to_json());
}

flora::RunManifest base_manifest(const std::string& sub, const std::vector<std::string>& args, const Inputs& in) {
  flora::RunManifest m;
  m.subcommand = sub;
  m.arguments = args;
  if (!in.configs.empty()) m.inputs["configs"] = in.configs;
  if (!in.trace.empty()) m.inputs["trace"] = in.trace;
  if (!in.prices.empty()) m.inputs["prices"] = in.prices;
  m.lenient = in.lenient;
  return m;
}

int cmd_validate(const Inputs& in) {
  const auto catalog = flora::load_configs(require(in.configs, "--configs"));
  const auto trace = flora::load_trace(require(in.trace, "--trace"), catalog, flora::TraceMode::lenient);
  const auto missing = trace.missing_cells();
  std::cout << trace.jobs().size() << " jobs, " << catalog.size() << " configs, " << trace.cell_count() << " cells\n";
  std::size_t per_class[2] = {0, 0};
  for (const auto& j : trace.jobs()) ++per_class[j.job_class == flora::JobClass::A ? 0 : 1];
  std::cout << "class A: " << per_class[0] << " jobs, class B: " << per_class[1] << " jobs\n";
  for (const auto& cell : missing) {
    std::cout << (in.lenient ? "warning" : "error") << ": missing cell " << cell.job_id << " @ config #" << cell.config_id
              << '\n';
  }
  if (!missing.empty() && !in.lenient) return kExitValidation;
  return 0;
}

int cmd_select(const Inputs& in, const std::string& job_class, const std::string& exclude, int decimals) {
  const auto catalog = flora::load_configs(require(in.configs, "--configs"));
  const auto trace = flora::load_trace(require(in.trace, "--trace"), catalog, mode_of(in));
  const auto prices = flora::load_prices(require(in.prices, "--prices"));
  std::optional<flora::JobClass> cls;
  if (job_class != "none") cls = flora::parse_job_class(job_class);
  std::optional<std::string_view> excluded;
  if (!exclude.empty()) excluded = exclude;

  const auto test_jobs = flora::filter_test_jobs(trace, cls, excluded);
  const auto ranking = flora::rank_configurations(test_jobs, prices);
  const auto& cfg = catalog.at(ranking.selected);
  std::cout << "selected: #" << ranking.selected << " (" << cfg.node_count << " x " << cfg.instance_type << ", "
            << cfg.total_cores() << " cores, " << flora::format_number(cfg.total_mem_gib()) << " GiB)\n";
  std::cout << "test jobs: " << ranking.test_jobs << '\n';
  for (const auto& d : ranking.dropped_jobs) std::cout << "warning: dropped incomplete test job " << d << '\n';
  std::cout << "rank,config_id,score,score_display\n";
  for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
    const auto& e = ranking.entries[i];
    std::cout << i + 1 << ',' << e.config_id << ',' << flora::format_number(e.score) << ','
              << flora::format_fixed(e.score, decimals) << '\n';
  }
  return 0;
}


}  // namespace

namespace flora::cli {
int run(const std::vector<std::string>& args);
}  // namespace flora::cli

namespace {

int cmd_rerun(const std::string& manifest_path, const std::string& out_override) {
  auto manifest = flora::RunManifest::from_json(flora::read_file(manifest_path));
  auto args = manifest.arguments;
  if (!out_override.empty()) {
    auto it = std::find(args.begin(), args.end(), "--out");
    if (it == args.end() || it + 1 == args.end()) throw flora::parse_error("manifest run has no --out to override");
    *(it + 1) = out_override;
  }
  return flora::cli::run(args);
}

}  // namespace

namespace flora::cli {

int run(const std::vector<std::string>& args) {
  CLI::App app{"Cost-optimized cloud cluster configuration selection via job classification"};
  app.require_subcommand(1);

  Inputs in;
  int decimals = 3;
  unsigned threads = 1;
  std::string out_dir;

  auto* validate = app.add_subcommand("validate", "check a trace for completeness and consistency");
  add_input_options(*validate, in, true, false);

  std::string job_class;
  std::string exclude;
  auto* select = app.add_subcommand("select", "rank configurations for a job class and print the selection");
  add_input_options(*select, in, true, true);
  select->add_option("--class", job_class, "job class of the new job: A, B, or none (single class)")->required();
  select->add_option("--algorithm", exclude, "algorithm whose test jobs are excluded (leave-one-algorithm-out)");
  select->add_option("--decimals", decimals, "display precision");

  std::vector<std::string> policy_keys;
  std::vector<std::string> replay_specs;
  auto* evaluate = app.add_subcommand("evaluate", "leave-one-algorithm-out evaluation of selection policies");
  add_input_options(*evaluate, in, true, true);
  evaluate->add_option("--policies", policy_keys, "policy keys (default: all standard policies)")->delimiter(',');
  evaluate->add_option("--replay", replay_specs, "replayed selections NAME=PATH (CSV job_id,config_id)");
  evaluate->add_option("--out", out_dir, "output directory")->required();
  evaluate->add_option("--decimals", decimals, "rounding of emitted values");
  evaluate->add_option("--threads", threads, "concurrent evaluation tasks");

  std::vector<double> ratios;
  std::vector<double> grid;
  double anchor = 1.0;
  auto* sweep = app.add_subcommand("sweep", "evaluate policies over memory/cpu price ratios");
  add_input_options(*sweep, in, true, false);
  sweep->add_option("--ratios", ratios, "explicit ratio grid")->delimiter(',');
  sweep->add_option("--grid", grid, "log grid LO,HI,POINTS_PER_DECADE (default 0.01,10,8)")->delimiter(',');
  sweep->add_option("--anchor", anchor, "cpu core-hour price");
  sweep->add_option("--policies", policy_keys, "policy keys")->delimiter(',');
  sweep->add_option("--out", out_dir, "output directory")->required();
  sweep->add_option("--decimals", decimals, "rounding of emitted values");
  sweep->add_option("--threads", threads, "concurrent evaluation tasks");

  std::vector<int> k_values;
  std::uint64_t seed = 0;
  flora::SamplingOptions sampling;
  auto* robustness = app.add_subcommand("robustness", "Flora quality with k deliberately misclassified jobs");
  add_input_options(*robustness, in, true, true);
  robustness->add_option("--k", k_values, "numbers of misclassified jobs (default 0..n)")->delimiter(',');
  robustness->add_option("--seed", seed, "Monte Carlo seed")->required();
  robustness->add_option("--exhaustive-threshold", sampling.exhaustive_threshold, "max subsets to enumerate");
  robustness->add_option("--samples", sampling.samples, "Monte Carlo samples per k");
  robustness->add_option("--out", out_dir, "output directory")->required();
  robustness->add_option("--decimals", decimals, "rounding of emitted values");
  robustness->add_option("--threads", threads, "concurrent evaluation tasks");

  std::string scenario_path;
  double sigma = -1.0;
  auto* synth = app.add_subcommand("synth", "generate a synthetic trace from a scenario file");
  add_input_options(*synth, in, false, true);
  synth->add_option("--scenario", scenario_path, "scenario JSON")->required();
  synth->add_option("--sigma", sigma, "log-normal noise sigma (overrides scenario)");
  synth->add_option("--seed", seed, "noise seed")->required();
  synth->add_option("--out", out_dir, "output directory")->required();

  std::string stats_format = "table";
  auto* stats = app.add_subcommand("stats", "descriptive statistics of per-cell cost and runtime");
  add_input_options(*stats, in, true, true);
  stats->add_option("--format", stats_format, "table or csv")->check(CLI::IsMember({"table", "csv"}));
  stats->add_option("--decimals", decimals, "rounding of emitted values");

  std::string manifest_path;
  std::string out_override;
  auto* rerun = app.add_subcommand("rerun", "repeat the run recorded in a manifest");
  rerun->add_option("manifest", manifest_path, "manifest.json of a previous run")->required();
  rerun->add_option("--out", out_override, "write to a different output directory");

  std::vector<std::string> argv_store{"flora"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const flora::EvaluateOptions eval_options{std::max(1u, threads)};

    if (*validate) return cmd_validate(in);
    if (*select) return cmd_select(in, job_class, exclude, decimals);
    if (*rerun) return cmd_rerun(manifest_path, out_override);

    if (*evaluate) {
      const auto catalog = flora::load_configs(require(in.configs, "--configs"));
      const auto trace = flora::load_trace(require(in.trace, "--trace"), catalog, mode_of(in));
      const auto prices = flora::load_prices(require(in.prices, "--prices"));
      auto manifest = base_manifest("evaluate", args, in);
      auto policies = parse_policies(policy_keys);
      for (auto& p : parse_replays(replay_specs, manifest.inputs)) policies.push_back(std::move(p));
      const auto report = flora::evaluate(trace, prices, policies, eval_options);

      const fs::path out(out_dir);
      flora::write_file(out / "per_job.csv", flora::emit_report(report, flora::ReportFormat::csv, decimals));
      flora::write_file(out / "aggregate.csv", flora::emit_aggregate_csv(report, decimals));
      flora::write_file(out / "report.md", flora::emit_report(report, flora::ReportFormat::markdown, decimals));
      flora::write_file(out / "plotdata.csv", flora::emit_report(report, flora::ReportFormat::plotdata, decimals));
      manifest.output = out_dir;
      manifest.parameters["decimals"] = std::to_string(decimals);
      if (!prices.as_of().empty()) manifest.parameters["prices_as_of"] = prices.as_of();
      write_manifest(out, manifest);
      std::cout << flora::emit_aggregate_csv(report, decimals);
      for (const auto& n : report.notices) std::cerr << "note: " << n << '\n';
      return 0;
    }

    if (*sweep) {
      const auto catalog = flora::load_configs(require(in.configs, "--configs"));
      const auto trace = flora::load_trace(require(in.trace, "--trace"), catalog, mode_of(in));
      if (ratios.empty()) {
        if (grid.empty()) grid = {0.01, 10.0, 8.0};
        if (grid.size() != 3) throw flora::parse_error("--grid expects LO,HI,POINTS_PER_DECADE");
        ratios = flora::log_grid(grid[0], grid[1], static_cast<int>(grid[2]));
      }
      const auto policies = parse_policies(policy_keys);
      const auto table = flora::price_ratio_sweep(trace, ratios, anchor, policies, eval_options);
      const fs::path out(out_dir);
      flora::write_file(out / "sweep.csv", flora::emit_sweep(table, flora::ReportFormat::csv, decimals));
      flora::write_file(out / "sweep.md", flora::emit_sweep(table, flora::ReportFormat::markdown, decimals));
      flora::write_file(out / "plotdata.csv", flora::emit_sweep(table, flora::ReportFormat::plotdata, decimals));
      auto manifest = base_manifest("sweep", args, in);
      manifest.output = out_dir;
      manifest.parameters["anchor"] = flora::format_number(anchor);
      manifest.parameters["ratios"] = std::to_string(ratios.size());
      write_manifest(out, manifest);
      std::cout << flora::emit_sweep(table, flora::ReportFormat::markdown, decimals);
      return 0;
    }

    if (*robustness) {
      const auto catalog = flora::load_configs(require(in.configs, "--configs"));
      const auto trace = flora::load_trace(require(in.trace, "--trace"), catalog, mode_of(in));
      const auto prices = flora::load_prices(require(in.prices, "--prices"));
      sampling.seed = seed;
      if (k_values.empty()) {
        for (std::size_t k = 0; k <= trace.jobs().size(); ++k) k_values.push_back(static_cast<int>(k));
      }
      const auto study = flora::misclassification_study(trace, prices, k_values, sampling, eval_options);
      const fs::path out(out_dir);
      flora::write_file(out / "robustness.csv", flora::emit_misclassification(study, flora::ReportFormat::csv, decimals));
      flora::write_file(out / "robustness.md",
                        flora::emit_misclassification(study, flora::ReportFormat::markdown, decimals));
      flora::write_file(out / "plotdata.csv",
                        flora::emit_misclassification(study, flora::ReportFormat::plotdata, decimals));
      auto manifest = base_manifest("robustness", args, in);
      manifest.output = out_dir;
      manifest.seed = seed;
      manifest.parameters["exhaustive_threshold"] = std::to_string(sampling.exhaustive_threshold);
      manifest.parameters["samples"] = std::to_string(sampling.samples);
      write_manifest(out, manifest);
      std::cout << flora::emit_misclassification(study, flora::ReportFormat::markdown, decimals);
      return 0;
    }

    if (*synth) {
      const auto scenario = flora::load_scenario(scenario_path);
      flora::ConfigCatalog catalog;
      if (!in.configs.empty()) catalog = flora::load_configs(in.configs);
      else if (scenario.catalog) catalog = *scenario.catalog;
      else throw flora::parse_error("synth needs --configs or a \"configs\" array in the scenario");
      auto noise = scenario.noise.value_or(flora::NoiseOptions{});
      if (sigma >= 0.0) noise.relative_sigma = sigma;
      noise.seed = seed;
      const auto trace = flora::generate_trace(scenario.jobs, catalog, noise);

      const fs::path out(out_dir);
      std::ostringstream trace_csv;
      flora::write_trace_csv(trace_csv, trace);
      flora::write_file(out / "trace.csv", trace_csv.str());
      std::ostringstream configs_csv;
      flora::write_configs_csv(configs_csv, catalog);
      flora::write_file(out / "configs.csv", configs_csv.str());

      auto manifest = base_manifest("synth", args, in);
      manifest.inputs["scenario"] = scenario_path;
      manifest.output = out_dir;
      manifest.seed = seed;
      manifest.parameters["relative_sigma"] = flora::format_number(noise.relative_sigma);
      if (!in.prices.empty()) {
        // closed-form optimum of the noiseless model, in replay format
        const auto prices = flora::load_prices(in.prices);
        std::ostringstream optimal;
        optimal << "job_id,config_id\n";
        for (const auto& p : scenario.jobs) {
          int best = 0;
          double best_cost = 0.0;
          for (const auto& c : catalog) {
            const double cost = flora::execution_cost(flora::synth_runtime(p, c), c, prices);
            if (best == 0 || cost < best_cost) {
              best = c.id;
              best_cost = cost;
            }
          }
          optimal << p.spec().job_id() << ',' << best << '\n';
        }
        flora::write_file(out / "optimal.csv", optimal.str());
      }
      write_manifest(out, manifest);
      std::cout << trace.jobs().size() << " jobs x " << catalog.size() << " configs written to " << out_dir << '\n';
      return 0;
    }

    if (*stats) {
      const auto catalog = flora::load_configs(require(in.configs, "--configs"));
      const auto trace = flora::load_trace(require(in.trace, "--trace"), catalog, mode_of(in));
      const auto prices = flora::load_prices(require(in.prices, "--prices"));
      const auto s = flora::trace_statistics(trace, prices);
      if (stats_format == "csv") flora::write_statistics_csv(std::cout, s, decimals);
      else std::cout << flora::statistics_table(s, decimals);
      return 0;
    }
  } catch (const flora::parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const flora::validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace flora::cli
