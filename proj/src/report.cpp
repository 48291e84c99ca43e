#include <algorithm>
#include <sstream>

#include "flora/csv.hpp"
#include "flora/error.hpp"
#include "flora/evaluation.hpp"
#include "flora/format.hpp"

namespace flora {

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "markdown" || text == "md") return ReportFormat::markdown;
  if (text == "plotdata") return ReportFormat::plotdata;
  throw parse_error("unknown report format '" + std::string(text) + "' (expected csv, markdown, plotdata)");
}

namespace {

std::string aggregate_label(const PolicyAggregate& agg, std::size_t total_jobs) {
  if (agg.jobs == total_jobs) return agg.label;
  return agg.label + " (" + std::to_string(agg.jobs) + " jobs)";
}

}  // namespace

std::string emit_report(const EvaluationReport& report, ReportFormat format, int decimals) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::csv:
      out << "policy,job_id,selected_config,normalized_cost,normalized_runtime\n";
      for (const auto& r : report.per_job) {
        out << csv::escape(r.policy) << ',' << csv::escape(r.job_id) << ','
            << (r.selected_config_id ? std::to_string(*r.selected_config_id) : std::string()) << ','
            << format_fixed(r.normalized_cost, decimals) << ',' << format_fixed(r.normalized_runtime, decimals) << '\n';
      }
      break;

    case ReportFormat::markdown: {
      out << "| Approach | Cost | Runtime |\n";
      out << "|:--|--:|--:|\n";
      for (const auto& agg : report.aggregate) {
        out << "| " << aggregate_label(agg, report.total_jobs) << " | " << format_fixed(agg.mean_cost, decimals) << " | "
            << format_fixed(agg.mean_runtime, decimals) << " |\n";
      }
      if (report.aggregate.empty() || report.per_job.empty()) break;

      // per-job selections, one column per policy
      std::vector<std::string> job_ids;
      for (const auto& r : report.per_job) {
        if (std::find(job_ids.begin(), job_ids.end(), r.job_id) == job_ids.end()) job_ids.push_back(r.job_id);
      }
      out << "\n| Job |";
      for (const auto& agg : report.aggregate) out << ' ' << agg.label << " |";
      out << "\n|:--|";
      for (std::size_t i = 0; i < report.aggregate.size(); ++i) out << "--:|";
      out << '\n';
      for (const auto& id : job_ids) {
        out << "| " << id << " |";
        for (const auto& agg : report.aggregate) {
          const auto* r = report.find(agg.policy, id);
          out << ' ';
          if (!r) {
            out << "--";
          } else {
            if (r->selected_config_id) out << '#' << *r->selected_config_id << ' ';
            out << format_fixed(r->normalized_cost, decimals);
          }
          out << " |";
        }
        out << '\n';
      }
      out << "| Mean |";
      for (const auto& agg : report.aggregate) out << ' ' << format_fixed(agg.mean_cost, decimals) << " |";
      out << '\n';
      if (!report.price_model_as_of.empty()) out << "\nPrices as of " << report.price_model_as_of << ".\n";
      for (const auto& n : report.notices) out << "\nNote: " << n << '\n';
      break;
    }

    case ReportFormat::plotdata: {
      out << "series,x,y\n";
      std::vector<std::string> job_ids;
      for (const auto& r : report.per_job) {
        auto it = std::find(job_ids.begin(), job_ids.end(), r.job_id);
        if (it == job_ids.end()) {
          job_ids.push_back(r.job_id);
          it = job_ids.end() - 1;
        }
        out << csv::escape(r.policy) << ',' << (it - job_ids.begin() + 1) << ','
            << format_fixed(r.normalized_cost, decimals) << '\n';
      }
      break;
    }
  }
  return out.str();
}

std::string emit_aggregate_csv(const EvaluationReport& report, int decimals) {
  std::ostringstream out;
  out << "policy,mean_cost,mean_runtime,jobs\n";
  for (const auto& agg : report.aggregate) {
    out << csv::escape(agg.policy) << ',' << format_fixed(agg.mean_cost, decimals) << ','
        << format_fixed(agg.mean_runtime, decimals) << ',' << agg.jobs << '\n';
  }
  return out.str();
}

std::string emit_sweep(const SweepTable& sweep, ReportFormat format, int decimals) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::csv:
      out << "ratio,policy,mean_cost\n";
      for (std::size_t r = 0; r < sweep.ratios.size(); ++r) {
        for (std::size_t p = 0; p < sweep.policies.size(); ++p) {
          out << format_number(sweep.ratios[r]) << ',' << csv::escape(sweep.policies[p]) << ','
              << format_fixed(sweep.mean_cost[r][p], decimals) << '\n';
        }
      }
      break;
    case ReportFormat::markdown:
      out << "| Memory/CPU price ratio |";
      for (const auto& label : sweep.labels) out << ' ' << label << " |";
      out << "\n|--:|";
      for (std::size_t p = 0; p < sweep.policies.size(); ++p) out << "--:|";
      out << '\n';
      for (std::size_t r = 0; r < sweep.ratios.size(); ++r) {
        out << "| " << format_number(sweep.ratios[r]) << " |";
        for (std::size_t p = 0; p < sweep.policies.size(); ++p) out << ' ' << format_fixed(sweep.mean_cost[r][p], decimals) << " |";
        out << '\n';
      }
      break;
    case ReportFormat::plotdata:
      out << "series,x,y\n";
      for (std::size_t p = 0; p < sweep.policies.size(); ++p) {
        for (std::size_t r = 0; r < sweep.ratios.size(); ++r) {
          out << csv::escape(sweep.policies[p]) << ',' << format_number(sweep.ratios[r]) << ','
              << format_fixed(sweep.mean_cost[r][p], decimals) << '\n';
        }
      }
      break;
  }
  return out.str();
}

std::string emit_misclassification(const MisclassificationStudy& study, ReportFormat format, int decimals) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::csv:
      out << "k,mean_cost,std_error,subsets,mode\n";
      for (const auto& p : study.points) {
        out << p.k << ',' << format_fixed(p.mean_cost, decimals) << ',' << format_fixed(p.std_error, decimals) << ','
            << p.subsets << ',' << (p.exhaustive ? "exhaustive" : "monte_carlo") << '\n';
      }
      break;
    case ReportFormat::markdown:
      out << "| Misclassified jobs | Flora | Flora with one class | Subsets |\n";
      out << "|--:|--:|--:|--:|\n";
      for (const auto& p : study.points) {
        out << "| " << p.k << " | " << format_fixed(p.mean_cost, decimals);
        if (!p.exhaustive) out << " ± " << format_fixed(p.std_error, decimals);
        out << " | " << format_fixed(study.fw1c_mean_cost, decimals) << " | " << p.subsets
            << (p.exhaustive ? "" : " sampled") << " |\n";
      }
      break;
    case ReportFormat::plotdata:
      out << "series,x,y\n";
      for (const auto& p : study.points) out << "flora," << p.k << ',' << format_fixed(p.mean_cost, decimals) << '\n';
      for (const auto& p : study.points) out << "fw1c," << p.k << ',' << format_fixed(study.fw1c_mean_cost, decimals) << '\n';
      break;
  }
  return out.str();
}

}  // namespace flora
