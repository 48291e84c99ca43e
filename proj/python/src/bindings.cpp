#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "flora/flora.hpp"

namespace py = pybind11;
using namespace flora;

namespace {

std::vector<SelectionPolicy> make_policies(const std::vector<std::string>& keys,
                                           const std::map<std::string, std::map<std::string, int>>& replays) {
  std::vector<SelectionPolicy> out;
  if (keys.empty() && replays.empty()) out = standard_policies();
  for (const auto& k : keys) out.push_back(SelectionPolicy::parse(k));
  for (const auto& [name, selections] : replays) out.push_back(SelectionPolicy::replay(name, selections));
  return out;
}

std::optional<JobClass> optional_class(const std::optional<std::string>& text) {
  if (!text) return std::nullopt;
  return parse_job_class(*text);
}

}  // namespace

PYBIND11_MODULE(_flora, m) {
  m.doc() = "Cost-optimized cluster configuration selection from a shared profiling trace";

  auto base = py::register_exception<error>(m, "FloraError", PyExc_ValueError);
  py::register_exception<parse_error>(m, "ParseError", base.ptr());
  py::register_exception<validation_error>(m, "ValidationError", base.ptr());

  py::enum_<JobClass>(m, "JobClass").value("A", JobClass::A).value("B", JobClass::B);

  py::class_<CloudConfig>(m, "CloudConfig")
      .def(py::init<int, std::string, int, int, double>(), py::arg("id"), py::arg("instance_type"),
           py::arg("node_count"), py::arg("cores_per_node"), py::arg("mem_gib_per_node"))
      .def_readonly("id", &CloudConfig::id)
      .def_readonly("instance_type", &CloudConfig::instance_type)
      .def_readonly("node_count", &CloudConfig::node_count)
      .def_readonly("cores_per_node", &CloudConfig::cores_per_node)
      .def_readonly("mem_gib_per_node", &CloudConfig::mem_gib_per_node)
      .def_property_readonly("total_cores", &CloudConfig::total_cores)
      .def_property_readonly("total_mem_gib", &CloudConfig::total_mem_gib)
      .def("__repr__", [](const CloudConfig& c) {
        return "<CloudConfig #" + std::to_string(c.id) + " " + std::to_string(c.node_count) + " x " + c.instance_type + ">";
      });

  py::class_<ConfigCatalog>(m, "ConfigCatalog")
      .def(py::init<std::vector<CloudConfig>>())
      .def("__len__", &ConfigCatalog::size)
      .def("__getitem__", &ConfigCatalog::at, py::return_value_policy::reference_internal)
      .def_property_readonly("configs", &ConfigCatalog::configs);

  py::class_<JobSpec>(m, "JobSpec")
      .def_readonly("algorithm", &JobSpec::algorithm)
      .def_readonly("dataset_gib", &JobSpec::dataset_gib)
      .def_readonly("job_class", &JobSpec::job_class)
      .def_property_readonly("job_id", &JobSpec::job_id);

  py::class_<ProfilingTrace>(m, "ProfilingTrace")
      .def_property_readonly("catalog", &ProfilingTrace::catalog)
      .def_property_readonly("jobs", &ProfilingTrace::jobs)
      .def_property_readonly("complete", &ProfilingTrace::complete)
      .def_property_readonly("cell_count", &ProfilingTrace::cell_count)
      .def("runtime", py::overload_cast<std::string_view, int>(&ProfilingTrace::runtime, py::const_), py::arg("job_id"),
           py::arg("config_id"))
      .def("to_csv", [](const ProfilingTrace& t) {
        std::ostringstream out;
        write_trace_csv(out, t);
        return out.str();
      });

  py::class_<PriceModel>(m, "PriceModel")
      .def_static(
          "linear",
          [](double cpu, double mem, double base, std::string as_of) {
            return PriceModel::linear({cpu, mem, base}, std::move(as_of));
          },
          py::arg("cpu_core_hour"), py::arg("mem_gib_hour"), py::arg("node_hour_base") = 0.0, py::arg("as_of") = "")
      .def_static(
          "catalog",
          [](const std::map<std::string, double>& prices, std::string as_of) {
            CatalogRates rates;
            rates.per_instance_hour.insert(prices.begin(), prices.end());
            return PriceModel::catalog(std::move(rates), std::move(as_of));
          },
          py::arg("per_instance_hour"), py::arg("as_of") = "")
      .def_static(
          "from_json",
          [](const std::string& text) {
            std::istringstream in(text);
            return ingest_price_snapshot(in);
          },
          py::arg("text"))
      .def_static("from_ratio", &model_from_ratio, py::arg("ratio"), py::arg("cpu_core_hour") = 1.0)
      .def("to_json", [](const PriceModel& p) { return price_snapshot_json(p); })
      .def("scaled", &PriceModel::scaled)
      .def_property_readonly("as_of", &PriceModel::as_of)
      .def("hourly_cost", [](const PriceModel& p, const CloudConfig& c) { return hourly_cost(c, p); });

  m.def("load_configs", &load_configs, py::arg("path"));
  m.def(
      "load_trace",
      [](const std::filesystem::path& path, const ConfigCatalog& catalog, bool lenient) {
        return load_trace(path, catalog, lenient ? TraceMode::lenient : TraceMode::strict);
      },
      py::arg("path"), py::arg("catalog"), py::arg("lenient") = false);
  m.def("load_prices", &load_prices, py::arg("path"));
  m.def("load_replay", &load_replay, py::arg("path"));

  m.def(
      "filter_test_jobs",
      [](const ProfilingTrace& trace, std::optional<std::string> job_class, std::optional<std::string> exclude) {
        std::optional<std::string_view> excluded;
        if (exclude) excluded = *exclude;
        return filter_test_jobs(trace, optional_class(job_class), excluded);
      },
      py::arg("trace"), py::arg("job_class") = py::none(), py::arg("exclude_algorithm") = py::none());

  m.def(
      "rank_configurations",
      [](const ProfilingTrace& trace, const PriceModel& prices) {
        const auto r = rank_configurations(trace, prices);
        py::list entries;
        for (const auto& e : r.entries) entries.append(py::make_tuple(e.config_id, e.score));
        py::dict out;
        out["selected"] = r.selected;
        out["ranking"] = entries;
        out["test_jobs"] = r.test_jobs;
        out["dropped_jobs"] = r.dropped_jobs;
        return out;
      },
      py::arg("trace"), py::arg("prices"));

  m.def(
      "select",
      [](const ProfilingTrace& trace, const PriceModel& prices, std::optional<std::string> job_class,
         std::optional<std::string> exclude) {
        std::optional<std::string_view> excluded;
        if (exclude) excluded = *exclude;
        return rank_configurations(filter_test_jobs(trace, optional_class(job_class), excluded), prices).selected;
      },
      py::arg("trace"), py::arg("prices"), py::arg("job_class") = py::none(), py::arg("exclude_algorithm") = py::none(),
      "Configuration id Flora selects for a new job of `job_class` (None for a single class).");

  m.def(
      "evaluate",
      [](const ProfilingTrace& trace, const PriceModel& prices, const std::vector<std::string>& policies,
         const std::map<std::string, std::map<std::string, int>>& replays, unsigned threads) {
        const auto pol = make_policies(policies, replays);
        const auto report = evaluate(trace, prices, pol, {threads});
        py::list per_job;
        for (const auto& r : report.per_job) {
          py::dict row;
          row["policy"] = r.policy;
          row["job_id"] = r.job_id;
          row["selected_config"] = r.selected_config_id;
          row["normalized_cost"] = r.normalized_cost;
          row["normalized_runtime"] = r.normalized_runtime;
          per_job.append(row);
        }
        py::dict aggregate;
        for (const auto& a : report.aggregate) {
          py::dict row;
          row["label"] = a.label;
          row["mean_cost"] = a.mean_cost;
          row["mean_runtime"] = a.mean_runtime;
          row["jobs"] = a.jobs;
          aggregate[py::str(a.policy)] = row;
        }
        py::dict out;
        out["per_job"] = per_job;
        out["aggregate"] = aggregate;
        out["notices"] = report.notices;
        out["markdown"] = emit_report(report, ReportFormat::markdown);
        return out;
      },
      py::arg("trace"), py::arg("prices"), py::arg("policies") = std::vector<std::string>{},
      py::arg("replays") = std::map<std::string, std::map<std::string, int>>{}, py::arg("threads") = 1u);

  m.def(
      "price_ratio_sweep",
      [](const ProfilingTrace& trace, const std::vector<double>& ratios, double anchor,
         const std::vector<std::string>& policies) {
        const auto pol = make_policies(policies, {});
        const auto table = price_ratio_sweep(trace, ratios, anchor, pol);
        py::dict out;
        for (std::size_t p = 0; p < table.policies.size(); ++p) {
          std::vector<double> column;
          for (const auto& row : table.mean_cost) column.push_back(row[p]);
          out[py::str(table.policies[p])] = column;
        }
        return out;
      },
      py::arg("trace"), py::arg("ratios"), py::arg("anchor") = 1.0, py::arg("policies") = std::vector<std::string>{});

  m.def("log_grid", &log_grid, py::arg("lo"), py::arg("hi"), py::arg("points_per_decade"));

  m.def(
      "misclassification_study",
      [](const ProfilingTrace& trace, const PriceModel& prices, const std::vector<int>& ks, std::uint64_t seed,
         std::uint64_t exhaustive_threshold, std::size_t samples) {
        const auto study = misclassification_study(trace, prices, ks, {exhaustive_threshold, samples, seed});
        py::list points;
        for (const auto& p : study.points) {
          py::dict row;
          row["k"] = p.k;
          row["mean_cost"] = p.mean_cost;
          row["std_error"] = p.std_error;
          row["subsets"] = p.subsets;
          row["exhaustive"] = p.exhaustive;
          points.append(row);
        }
        py::dict out;
        out["points"] = points;
        out["fw1c_mean_cost"] = study.fw1c_mean_cost;
        return out;
      },
      py::arg("trace"), py::arg("prices"), py::arg("k_values"), py::arg("seed"),
      py::arg("exhaustive_threshold") = SamplingOptions{}.exhaustive_threshold,
      py::arg("samples") = SamplingOptions{}.samples);

  py::class_<SynthJobParams>(m, "SynthJobParams")
      .def(py::init([](std::string algorithm, double dataset_gib, JobClass job_class, double work, double parallel,
                       double need, double penalty, double overhead) {
             SynthJobParams p{std::move(algorithm), dataset_gib, job_class, work, parallel, need, penalty, overhead};
             p.validate();
             return p;
           }),
           py::arg("algorithm"), py::arg("dataset_gib"), py::arg("job_class"), py::arg("base_work_core_hours"),
           py::arg("parallel_fraction") = 1.0, py::arg("cache_need_gib") = 0.0, py::arg("cache_miss_penalty") = 1.0,
           py::arg("per_node_overhead_seconds") = 0.0)
      .def_readonly("algorithm", &SynthJobParams::algorithm)
      .def_readonly("job_class", &SynthJobParams::job_class)
      .def_property_readonly("job_id", [](const SynthJobParams& p) { return p.spec().job_id(); });

  m.def("synth_runtime", &synth_runtime, py::arg("params"), py::arg("config"));
  m.def(
      "generate_trace",
      [](const std::vector<SynthJobParams>& params, const ConfigCatalog& catalog, double sigma, std::uint64_t seed) {
        return generate_trace(params, catalog, {sigma, seed});
      },
      py::arg("params"), py::arg("catalog"), py::arg("sigma") = 0.0, py::arg("seed") = 0);

  m.def(
      "trace_statistics",
      [](const ProfilingTrace& trace, const PriceModel& prices) {
        const auto s = trace_statistics(trace, prices);
        auto as_dict = [](const Summary& x) {
          py::dict d;
          d["count"] = x.count;
          d["mean"] = x.mean;
          d["std"] = x.std_defined ? py::cast(x.std) : py::none();
          d["min"] = x.min;
          d["25%"] = x.q25;
          d["50%"] = x.q50;
          d["75%"] = x.q75;
          d["max"] = x.max;
          return d;
        };
        py::dict out;
        out["cost"] = as_dict(s.cost);
        out["runtime"] = as_dict(s.runtime);
        return out;
      },
      py::arg("trace"), py::arg("prices"));
}
