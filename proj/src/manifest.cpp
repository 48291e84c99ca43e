#include "flora/manifest.hpp"

#include <json.hpp>

#include "flora/error.hpp"

namespace flora {

std::string RunManifest::to_json() const {
  nlohmann::ordered_json doc;
  doc["tool"] = "flora";
  doc["subcommand"] = subcommand;
  doc["arguments"] = arguments;
  doc["inputs"] = inputs;
  doc["output"] = output;
  doc["mode"] = lenient ? "lenient" : "strict";
  if (seed) doc["seed"] = *seed;
  else doc["seed"] = nullptr;
  doc["parameters"] = parameters;
  return doc.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    RunManifest m;
    m.subcommand = doc.at("subcommand").get<std::string>();
    m.arguments = doc.at("arguments").get<std::vector<std::string>>();
    m.inputs = doc.value("inputs", std::map<std::string, std::string>{});
    m.output = doc.value("output", std::string{});
    m.lenient = doc.value("mode", std::string("strict")) == "lenient";
    if (doc.contains("seed") && !doc["seed"].is_null()) m.seed = doc["seed"].get<std::uint64_t>();
    m.parameters = doc.value("parameters", std::map<std::string, std::string>{});
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("manifest: ") + e.what());
  }
}

}  // namespace flora
