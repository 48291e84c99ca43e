#include "flora/config.hpp"

#include <algorithm>
#include <ostream>

#include "flora/csv.hpp"
#include "flora/error.hpp"
#include "flora/format.hpp"

namespace flora {

ConfigCatalog::ConfigCatalog(std::vector<CloudConfig> configs) : configs_(std::move(configs)) {
  std::sort(configs_.begin(), configs_.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < configs_.size(); ++i) {
    const auto& c = configs_[i];
    const std::string name = "config #" + std::to_string(c.id);
    if (i > 0 && configs_[i - 1].id == c.id) throw validation_error("duplicate config_id " + std::to_string(c.id));
    if (c.id <= 0) throw validation_error(name + ": non-positive config_id");
    if (c.node_count <= 0) throw validation_error(name + ": non-positive node_count");
    if (c.cores_per_node <= 0) throw validation_error(name + ": non-positive cores_per_node");
    if (!(c.mem_gib_per_node > 0.0)) throw validation_error(name + ": non-positive mem_gib_per_node");
  }
}

const CloudConfig* ConfigCatalog::find(int id) const {
  auto it = std::lower_bound(configs_.begin(), configs_.end(), id, [](const auto& c, int v) { return c.id < v; });
  return it != configs_.end() && it->id == id ? &*it : nullptr;
}

const CloudConfig& ConfigCatalog::at(int id) const {
  if (const auto* c = find(id)) return *c;
  throw validation_error("unknown config_id " + std::to_string(id));
}

std::optional<std::size_t> ConfigCatalog::index_of(int id) const {
  const auto* c = find(id);
  if (!c) return std::nullopt;
  return static_cast<std::size_t>(c - configs_.data());
}

ConfigCatalog ingest_configs(std::istream& in) {
  const auto rows = csv::read_table(
      in, {"config_id", "instance_type", "node_count", "cores_per_node", "mem_gib_per_node"}, "config CSV");

  std::vector<CloudConfig> configs;
  configs.reserve(rows.size());
  for (const auto& row : rows) {
    const auto where = "config CSV line " + std::to_string(row.line);
    auto integer = [&](std::size_t col, const char* field) {
      long long v = 0;
      if (!parse_int(row.fields[col], v)) throw parse_error(where + ": cannot parse " + field);
      if (v <= 0) throw validation_error(where + ": non-positive " + field);
      return static_cast<int>(v);
    };
    CloudConfig c;
    c.id = integer(0, "config_id");
    c.instance_type = std::string(trim(row.fields[1]));
    c.node_count = integer(2, "node_count");
    c.cores_per_node = integer(3, "cores_per_node");
    if (!parse_double(row.fields[4], c.mem_gib_per_node)) throw parse_error(where + ": cannot parse mem_gib_per_node");
    if (!(c.mem_gib_per_node > 0.0)) throw validation_error(where + ": non-positive mem_gib_per_node");
    if (c.instance_type.empty()) throw validation_error(where + ": empty instance_type");
    configs.push_back(std::move(c));
  }
  return ConfigCatalog(std::move(configs));
}

void write_configs_csv(std::ostream& out, const ConfigCatalog& catalog) {
  out << "config_id,instance_type,node_count,cores_per_node,mem_gib_per_node\n";
  for (const auto& c : catalog) {
    out << c.id << ',' << csv::escape(c.instance_type) << ',' << c.node_count << ',' << c.cores_per_node << ','
        << format_number(c.mem_gib_per_node) << '\n';
  }
}

}  // namespace flora
