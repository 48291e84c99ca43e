#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "flora/config.hpp"

namespace flora {

/// Per-resource hourly rates. Hourly cost of a config is
/// node_count * (cores_per_node * cpu_core_hour + mem_gib_per_node * mem_gib_hour + node_hour_base).
struct LinearRates {
  double cpu_core_hour = 0.0;
  double mem_gib_hour = 0.0;
  double node_hour_base = 0.0;

  bool operator==(const LinearRates&) const = default;
};

/// Hourly price of one VM per instance type.
struct CatalogRates {
  std::map<std::string, double, std::less<>> per_instance_hour;

  bool operator==(const CatalogRates&) const = default;
};

/// Current hourly cost structure. Currency is an opaque unit.
class PriceModel {
 public:
  PriceModel() = default;

  // Rates are validated: linear rates non-negative (a model with all-zero rates is constructible
  // so degenerate-price handling can be exercised downstream); catalog prices positive, non-empty.
  static PriceModel linear(LinearRates rates, std::string as_of = {});
  static PriceModel catalog(CatalogRates rates, std::string as_of = {});

  bool is_linear() const { return std::holds_alternative<LinearRates>(rates_); }
  const LinearRates* linear_rates() const { return std::get_if<LinearRates>(&rates_); }
  const CatalogRates* catalog_rates() const { return std::get_if<CatalogRates>(&rates_); }
  const std::string& as_of() const { return as_of_; }

  // Every rate multiplied by `lambda` (> 0).
  PriceModel scaled(double lambda) const;

  // mem_gib_hour / cpu_core_hour for linear models with a positive cpu rate.
  std::optional<double> memory_to_cpu_ratio() const;

  bool operator==(const PriceModel&) const = default;

 private:
  std::variant<LinearRates, CatalogRates> rates_;
  std::string as_of_;
};

double hourly_cost(const CloudConfig& config, const PriceModel& prices);

// (runtime_seconds / 3600) * hourly_cost
double execution_cost(double runtime_seconds, const CloudConfig& config, const PriceModel& prices);

// Linear model with memory priced at `ratio` cpu-core-hours per GiB-hour and no per-node term.
PriceModel model_from_ratio(double ratio, double cpu_core_hour_anchor);

// Throws validation_error naming the first instance type of the catalog that has no price.
void check_price_coverage(const PriceModel& prices, const ConfigCatalog& catalog);

// JSON snapshot: {"model":"linear",...} or {"model":"catalog","per_instance_hour":{...}}, optional "as_of".
PriceModel ingest_price_snapshot(std::istream& in);
std::string price_snapshot_json(const PriceModel& prices);

}  // namespace flora
