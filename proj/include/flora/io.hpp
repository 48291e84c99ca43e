#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "flora/config.hpp"
#include "flora/pricing.hpp"
#include "flora/synth.hpp"
#include "flora/trace.hpp"

namespace flora {

// File wrappers around the stream ingesters. An unreadable file is a parse_error.
ConfigCatalog load_configs(const std::filesystem::path& path);
ProfilingTrace load_trace(const std::filesystem::path& path, const ConfigCatalog& catalog,
                          TraceMode mode = TraceMode::strict);
PriceModel load_prices(const std::filesystem::path& path);
std::map<std::string, int> load_replay(const std::filesystem::path& path);
SynthScenario load_scenario(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace flora
