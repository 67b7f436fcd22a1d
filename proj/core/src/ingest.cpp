#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>

#include "pagrowth/error.hpp"
#include "pagrowth/temporal_graph.hpp"

namespace pagrowth {
namespace {

bool is_blank_or_comment(std::string_view line) {
  auto first = line.find_first_not_of(" \t\r");
  return first == std::string_view::npos || line[first] == '#';
}

// Splits on runs of tabs/spaces; trailing '\r' is ignored.
std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == '\t' || line[i] == ' ' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != '\t' && line[j] != ' ' && line[j] != '\r') ++j;
    fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

std::optional<Timestamp> parse_integer(std::string_view text) {
  Timestamp value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

bool all_digits(std::string_view text) {
  return !text.empty() && std::all_of(text.begin(), text.end(),
                                      [](char c) { return c >= '0' && c <= '9'; });
}

// SNAP files disagree on leading zeros between edges and dates.
std::string normalize_snap_id(std::string_view text) {
  if (!all_digits(text)) return std::string(text);
  auto first = text.find_first_not_of('0');
  if (first == std::string_view::npos) return "0";
  return std::string(text.substr(first));
}

}  // namespace

IngestResult ingest(std::vector<RawEdge> raw, TimeUnit unit, IngestReport report) {
  std::stable_sort(raw.begin(), raw.end(),
                   [](const RawEdge& a, const RawEdge& b) { return a.t < b.t; });
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> external;
  auto id_of = [&](const std::string& name) {
    auto [it, inserted] = ids.try_emplace(name, static_cast<NodeId>(external.size()));
    if (inserted) external.push_back(name);
    return it->second;
  };
  std::vector<TimedEdge> edges;
  edges.reserve(raw.size());
  for (const auto& r : raw) {
    if (r.src == r.dst) {
      ++report.self_loops;
      continue;
    }
    const NodeId s = id_of(r.src);
    const NodeId d = id_of(r.dst);
    edges.push_back({s, d, r.t});
  }
  const std::size_t n = external.size();
  IngestResult result;
  result.network =
      TemporalNetwork::from_edges(std::move(edges), n, unit, std::move(external), &report);
  result.report = report;
  return result;
}

IngestResult ingest_generic(std::istream& in, const IngestOptions& /*options*/) {
  IngestReport report;
  std::vector<RawEdge> raw;
  bool saw_date = false;
  std::string line;
  while (std::getline(in, line)) {
    ++report.lines;
    if (is_blank_or_comment(line)) {
      ++report.comment_lines;
      continue;
    }
    auto fields = split_fields(line);
    if (fields.size() != 3) {
      throw ParseError(report.lines, "expected 3 fields (src, dst, timestamp), got " +
                                         std::to_string(fields.size()));
    }
    RawEdge e{std::string(fields[0]), std::string(fields[1]), 0};
    if (auto date = parse_iso_date(fields[2])) {
      e.t = *date;
      saw_date = true;
    } else if (auto tick = parse_integer(fields[2])) {
      e.t = *tick;
    } else {
      throw ParseError(report.lines, "unparseable timestamp '" + std::string(fields[2]) + "'");
    }
    raw.push_back(std::move(e));
    ++report.edges_read;
  }
  if (in.bad()) throw DataError("read error");
  return ingest(std::move(raw), saw_date ? TimeUnit::kDays : TimeUnit::kTicks, report);
}

IngestResult ingest_snap(std::istream& edges, std::istream& dates,
                         const IngestOptions& options) {
  IngestReport report;
  std::unordered_map<std::string, Timestamp> date_of;
  std::vector<std::pair<std::string, Timestamp>> prefixed;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(dates, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    auto fields = split_fields(line);
    if (fields.size() != 2) {
      throw ParseError(line_no, "dates file: expected NodeId and date");
    }
    auto date = parse_iso_date(fields[1]);
    if (!date) throw ParseError(line_no, "dates file: bad date '" + std::string(fields[1]) + "'");
    std::string id = normalize_snap_id(fields[0]);
    const auto& prefix = options.snap_strip_prefix;
    if (!prefix.empty() && id.size() > prefix.size() && id.starts_with(prefix)) {
      prefixed.emplace_back(normalize_snap_id(std::string_view(id).substr(prefix.size())),
                            *date);
    }
    date_of.try_emplace(std::move(id), *date);
  }
  // Unprefixed entries take precedence over cross-listed duplicates.
  for (auto& [id, date] : prefixed) date_of.try_emplace(std::move(id), date);

  std::vector<RawEdge> raw;
  while (std::getline(edges, line)) {
    ++report.lines;
    if (is_blank_or_comment(line)) {
      ++report.comment_lines;
      continue;
    }
    auto fields = split_fields(line);
    if (fields.size() != 2) {
      throw ParseError(report.lines, "edges file: expected FromNodeId and ToNodeId");
    }
    ++report.edges_read;
    std::string src = normalize_snap_id(fields[0]);
    auto it = date_of.find(src);
    if (it == date_of.end()) {
      ++report.missing_dates;
      continue;
    }
    raw.push_back({std::move(src), normalize_snap_id(fields[1]), it->second});
  }
  if (edges.bad() || dates.bad()) throw DataError("read error");
  return ingest(std::move(raw), TimeUnit::kDays, report);
}

void write_generic(std::ostream& out, const TemporalNetwork& net) {
  const bool dated = net.time_unit() == TimeUnit::kDays;
  for (const auto& e : net.edges()) {
    out << e.src << '\t' << e.dst << '\t';
    if (dated) {
      out << format_iso_date(e.t);
    } else {
      out << e.t;
    }
    out << '\n';
  }
}

void write_id_table(std::ostream& out, const TemporalNetwork& net) {
  for (NodeId v = 0; v < net.num_nodes(); ++v) {
    out << v << '\t' << net.external_id(v) << '\n';
  }
}

}  // namespace pagrowth
