#include "run_config.hpp"

#include <algorithm>
#include <fstream>

#include "pagrowth/error.hpp"

namespace pagrowth::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool needs_dataset(const std::string& command) {
  return command == "ingest" || command == "measure" || command == "report";
}

}  // namespace

std::vector<std::string> validate(const RunConfig& config) {
  std::vector<std::string> errors;
  const std::string& cmd = config.command;

  if (config.output.empty()) errors.push_back("output: an output directory is required");
  if (cmd != "simulate" && config.input.empty()) errors.push_back("input: an input path is required");
  if (needs_dataset(cmd) && config.format == InputFormat::kSnapCitation && config.dates.empty()) {
    errors.push_back("dates: the snap format needs a dates file");
  }

  if (config.dt <= 0) errors.push_back("dt: window length must be positive");
  if (config.stride && *config.stride <= 0) errors.push_back("stride: must be positive");
  if (config.windows && *config.windows == 0) errors.push_back("windows: must be at least 1");
  if (config.start && !parse_iso_date(*config.start)) {
    const auto& s = *config.start;
    const bool integer = !s.empty() && std::all_of(s.begin() + (s[0] == '-' ? 1 : 0), s.end(),
                                                   [](char c) { return c >= '0' && c <= '9'; });
    if (!integer) errors.push_back("start: expected YYYY-MM-DD or an integer tick");
  }
  if (!(config.fit.tail_trim >= 0.0 && config.fit.tail_trim < 1.0)) {
    errors.push_back("tail-trim: must lie in [0, 1)");
  }

  if (cmd == "simulate") {
    try {
      config.sim.validate();
    } catch (const ConfigError& e) {
      errors.push_back(std::string("simulation: ") + e.what());
    }
    try {
      config.kernel.validate();
    } catch (const ConfigError& e) {
      errors.push_back(std::string("kernel: ") + e.what());
    }
  }
  return errors;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty()) {
      throw ConfigError("config: line " + std::to_string(line_no) + ": empty key");
    }
    entries.emplace_back(std::move(key), std::move(value));
  }
  return entries;
}

}  // namespace pagrowth::cli
