#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace flora {

/// One purchasable cluster shape: a homogeneous set of `node_count` VMs of one instance type.
struct CloudConfig {
  int id = 0;
  std::string instance_type;
  int node_count = 0;
  int cores_per_node = 0;
  double mem_gib_per_node = 0.0;

  int total_cores() const { return node_count * cores_per_node; }
  double total_mem_gib() const { return node_count * mem_gib_per_node; }

  bool operator==(const CloudConfig&) const = default;
};

/// The set of configurations a selection chooses from, kept sorted by ascending id.
class ConfigCatalog {
 public:
  ConfigCatalog() = default;
  // Throws validation_error on duplicate ids or non-positive sizes.
  explicit ConfigCatalog(std::vector<CloudConfig> configs);

  const std::vector<CloudConfig>& configs() const { return configs_; }
  std::size_t size() const { return configs_.size(); }
  bool empty() const { return configs_.empty(); }

  const CloudConfig* find(int id) const;
  const CloudConfig& at(int id) const;
  std::optional<std::size_t> index_of(int id) const;

  auto begin() const { return configs_.begin(); }
  auto end() const { return configs_.end(); }

  bool operator==(const ConfigCatalog&) const = default;

 private:
  std::vector<CloudConfig> configs_;
};

// Header: config_id,instance_type,node_count,cores_per_node,mem_gib_per_node
ConfigCatalog ingest_configs(std::istream& in);
void write_configs_csv(std::ostream& out, const ConfigCatalog& catalog);

}  // namespace flora
