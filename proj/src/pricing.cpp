#include "flora/pricing.hpp"

#include <cmath>
#include <istream>

#include <json.hpp>

#include "flora/error.hpp"
#include "flora/format.hpp"

namespace flora {

namespace {

void check_rate(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) throw validation_error(std::string("negative or non-finite rate ") + name);
}

}  // namespace

PriceModel PriceModel::linear(LinearRates rates, std::string as_of) {
  check_rate(rates.cpu_core_hour, "cpu_core_hour");
  check_rate(rates.mem_gib_hour, "mem_gib_hour");
  check_rate(rates.node_hour_base, "node_hour_base");
  PriceModel m;
  m.rates_ = rates;
  m.as_of_ = std::move(as_of);
  return m;
}

PriceModel PriceModel::catalog(CatalogRates rates, std::string as_of) {
  if (rates.per_instance_hour.empty()) throw validation_error("empty catalog");
  for (const auto& [type, price] : rates.per_instance_hour) {
    if (!std::isfinite(price) || price <= 0.0) throw validation_error("non-positive price for instance type " + type);
  }
  PriceModel m;
  m.rates_ = std::move(rates);
  m.as_of_ = std::move(as_of);
  return m;
}

PriceModel PriceModel::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw validation_error("price scale factor must be > 0");
  if (const auto* l = linear_rates()) {
    return linear({l->cpu_core_hour * lambda, l->mem_gib_hour * lambda, l->node_hour_base * lambda}, as_of_);
  }
  CatalogRates c = *catalog_rates();
  for (auto& [_, price] : c.per_instance_hour) price *= lambda;
  return catalog(std::move(c), as_of_);
}

std::optional<double> PriceModel::memory_to_cpu_ratio() const {
  const auto* l = linear_rates();
  if (!l || !(l->cpu_core_hour > 0.0)) return std::nullopt;
  return l->mem_gib_hour / l->cpu_core_hour;
}

double hourly_cost(const CloudConfig& config, const PriceModel& prices) {
  if (const auto* l = prices.linear_rates()) {
    return config.node_count *
           (config.cores_per_node * l->cpu_core_hour + config.mem_gib_per_node * l->mem_gib_hour + l->node_hour_base);
  }
  const auto& table = prices.catalog_rates()->per_instance_hour;
  const auto it = table.find(config.instance_type);
  if (it == table.end()) throw validation_error("no price for instance type " + config.instance_type);
  return config.node_count * it->second;
}

double execution_cost(double runtime_seconds, const CloudConfig& config, const PriceModel& prices) {
  if (!(runtime_seconds > 0.0)) throw validation_error("execution_cost: runtime_seconds must be > 0");
  return runtime_seconds / 3600.0 * hourly_cost(config, prices);
}

PriceModel model_from_ratio(double ratio, double cpu_core_hour_anchor) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) throw validation_error("price ratio must be > 0");
  if (!(cpu_core_hour_anchor > 0.0) || !std::isfinite(cpu_core_hour_anchor)) {
    throw validation_error("cpu_core_hour anchor must be > 0");
  }
  return PriceModel::linear({cpu_core_hour_anchor, ratio * cpu_core_hour_anchor, 0.0}, "ratio=" + format_number(ratio));
}

void check_price_coverage(const PriceModel& prices, const ConfigCatalog& catalog) {
  const auto* c = prices.catalog_rates();
  if (!c) return;
  for (const auto& cfg : catalog) {
    if (!c->per_instance_hour.contains(cfg.instance_type)) {
      throw validation_error("no price for instance type " + cfg.instance_type);
    }
  }
}

PriceModel ingest_price_snapshot(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("price snapshot: ") + e.what());
  }
  if (!doc.is_object()) throw parse_error("price snapshot: expected a JSON object");

  std::string as_of;
  if (doc.contains("as_of")) {
    if (!doc["as_of"].is_string()) throw parse_error("price snapshot: as_of must be a string");
    as_of = doc["as_of"].get<std::string>();
  }
  if (!doc.contains("model") || !doc["model"].is_string()) throw parse_error("price snapshot: missing \"model\"");
  const auto model = doc["model"].get<std::string>();

  auto number = [&](const nlohmann::json& obj, const std::string& key, bool required) {
    if (!obj.contains(key)) {
      if (required) throw parse_error("price snapshot: missing \"" + key + "\"");
      return 0.0;
    }
    if (!obj[key].is_number()) throw parse_error("price snapshot: \"" + key + "\" must be a number");
    return obj[key].get<double>();
  };

  if (model == "linear") {
    LinearRates r;
    r.cpu_core_hour = number(doc, "cpu_core_hour", true);
    r.mem_gib_hour = number(doc, "mem_gib_hour", true);
    r.node_hour_base = number(doc, "node_hour_base", false);
    auto m = PriceModel::linear(r, as_of);
    if (r.cpu_core_hour == 0.0 && r.mem_gib_hour == 0.0 && r.node_hour_base == 0.0) {
      throw validation_error("price snapshot: linear model needs at least one positive rate");
    }
    return m;
  }
  if (model == "catalog") {
    if (!doc.contains("per_instance_hour") || !doc["per_instance_hour"].is_object()) {
      throw parse_error("price snapshot: catalog model needs a \"per_instance_hour\" object");
    }
    CatalogRates c;
    for (const auto& [type, price] : doc["per_instance_hour"].items()) {
      if (!price.is_number()) throw parse_error("price snapshot: price for " + type + " must be a number");
      c.per_instance_hour.emplace(type, price.get<double>());
    }
    return PriceModel::catalog(std::move(c), as_of);
  }
  throw validation_error("price snapshot: unknown model \"" + model + "\"");
}

std::string price_snapshot_json(const PriceModel& prices) {
  nlohmann::ordered_json doc;
  if (const auto* l = prices.linear_rates()) {
    doc["model"] = "linear";
    doc["cpu_core_hour"] = l->cpu_core_hour;
    doc["mem_gib_hour"] = l->mem_gib_hour;
    doc["node_hour_base"] = l->node_hour_base;
  } else {
    doc["model"] = "catalog";
    nlohmann::ordered_json table = nlohmann::ordered_json::object();
    for (const auto& [type, price] : prices.catalog_rates()->per_instance_hour) table[type] = price;
    doc["per_instance_hour"] = table;
  }
  if (!prices.as_of().empty()) doc["as_of"] = prices.as_of();
  return doc.dump(2) + "\n";
}

}  // namespace flora
