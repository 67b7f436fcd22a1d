#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pagrowth/fitting.hpp"
#include "pagrowth/growth_sim.hpp"
#include "pagrowth/temporal_graph.hpp"

namespace pagrowth::cli {

enum class InputFormat { kGenericTsv, kSnapCitation };

struct RunConfig {
  std::string command;

  std::string input;
  std::string dates;
  InputFormat format = InputFormat::kGenericTsv;
  std::string snap_strip_prefix;
  std::string output;

  DegreeMode degree_mode = DegreeMode::kUndirected;
  Timestamp dt = kDaysPerYear;
  // Schedule overrides; unset fields fall back to the yearly default.
  std::optional<std::string> start;
  std::optional<Timestamp> stride;
  std::optional<std::size_t> windows;

  FitOptions fit;
  std::vector<std::uint32_t> c0 = {20};
  std::vector<std::uint32_t> k0 = {20};
  unsigned threads = 0;
  bool export_coreness = false;
  bool timestamp = true;

  SimConfig sim;
  KernelSpec kernel;
};

// Field-level validation messages; empty when the config is usable.
std::vector<std::string> validate(const RunConfig& config);

// Reads `key = value` lines (`#` comments, blank lines ignored). Keys are
// long flag names; underscores and dashes are interchangeable. Throws
// ConfigError with the line number on a malformed line.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

}  // namespace pagrowth::cli
