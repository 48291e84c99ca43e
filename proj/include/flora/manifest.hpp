#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace flora {

/// Everything needed to re-run a CLI invocation: the subcommand, its full argument list, and the
/// resolved inputs, output location, mode and seed. Serialized without timestamps so identical
/// runs produce identical manifests.
struct RunManifest {
  std::string subcommand;
  std::vector<std::string> arguments;  // argv after the program name
  std::map<std::string, std::string> inputs;
  std::string output;
  bool lenient = false;
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::string> parameters;

  std::string to_json() const;
  static RunManifest from_json(const std::string& text);

  bool operator==(const RunManifest&) const = default;
};

}  // namespace flora
