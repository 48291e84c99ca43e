#include "flora/io.hpp"

#include <fstream>
#include <sstream>

#include "flora/error.hpp"
#include "flora/selector.hpp"

namespace flora {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open " + path.string());
  return in;
}

}  // namespace

ConfigCatalog load_configs(const std::filesystem::path& path) {
  auto in = open_input(path);
  return ingest_configs(in);
}

ProfilingTrace load_trace(const std::filesystem::path& path, const ConfigCatalog& catalog, TraceMode mode) {
  auto in = open_input(path);
  return ingest_trace(in, catalog, mode);
}

PriceModel load_prices(const std::filesystem::path& path) {
  auto in = open_input(path);
  return ingest_price_snapshot(in);
}

std::map<std::string, int> load_replay(const std::filesystem::path& path) {
  auto in = open_input(path);
  return ingest_replay(in);
}

SynthScenario load_scenario(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_scenario(in);
}

std::string read_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw error("cannot write " + path.string());
  out << content;
  if (!out) throw error("failed writing " + path.string());
}

}  // namespace flora
