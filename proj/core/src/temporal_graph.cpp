#include "pagrowth/temporal_graph.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <unordered_set>

#include "pagrowth/error.hpp"

namespace pagrowth {

std::string_view to_string(DegreeMode mode) {
  switch (mode) {
    case DegreeMode::kUndirected:
      return "undirected";
    case DegreeMode::kIn:
      return "in";
    case DegreeMode::kOut:
      return "out";
  }
  return "undirected";
}

std::optional<DegreeMode> parse_degree_mode(std::string_view text) {
  if (text == "undirected") return DegreeMode::kUndirected;
  if (text == "in") return DegreeMode::kIn;
  if (text == "out") return DegreeMode::kOut;
  return std::nullopt;
}

namespace {

std::optional<int> parse_fixed_digits(std::string_view text) {
  int value = 0;
  if (text.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace

std::optional<Timestamp> parse_iso_date(std::string_view text) {
  using namespace std::chrono;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto y = parse_fixed_digits(text.substr(0, 4));
  auto m = parse_fixed_digits(text.substr(5, 2));
  auto d = parse_fixed_digits(text.substr(8, 2));
  if (!y || !m || !d) return std::nullopt;
  year_month_day ymd{year{*y}, month{static_cast<unsigned>(*m)},
                     day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days{ymd}.time_since_epoch().count();
}

std::string format_iso_date(Timestamp days) {
  using namespace std::chrono;
  year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

Timestamp next_new_year(Timestamp days) {
  using namespace std::chrono;
  year_month_day ymd{sys_days{std::chrono::days{days}}};
  year_month_day next{ymd.year() + years{1}, January, day{1}};
  return sys_days{next}.time_since_epoch().count();
}

TemporalNetwork TemporalNetwork::from_edges(std::vector<TimedEdge> edges,
                                            std::size_t num_nodes,
                                            TimeUnit unit,
                                            std::vector<std::string> external_ids,
                                            IngestReport* report) {
  TemporalNetwork net;
  net.unit_ = unit;
  for (const auto& e : edges) {
    num_nodes = std::max<std::size_t>(num_nodes, std::max(e.src, e.dst) + std::size_t{1});
  }
  std::stable_sort(edges.begin(), edges.end(),
                   [](const TimedEdge& a, const TimedEdge& b) { return a.t < b.t; });

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
  net.edges_.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.src == e.dst) {
      ++self_loops;
      continue;
    }
    const std::uint64_t lo = std::min(e.src, e.dst);
    const std::uint64_t hi = std::max(e.src, e.dst);
    if (!seen.insert((lo << 32) | hi).second) {
      ++duplicates;
      continue;
    }
    net.edges_.push_back(e);
  }

  net.arrival_.assign(num_nodes, kNever);
  for (const auto& e : net.edges_) {
    // Edges are sorted, so the first write is the minimum.
    if (net.arrival_[e.src] == kNever) net.arrival_[e.src] = e.t;
    if (net.arrival_[e.dst] == kNever) net.arrival_[e.dst] = e.t;
  }
  if (external_ids.size() == num_nodes) net.external_ids_ = std::move(external_ids);

  if (report != nullptr) {
    report->self_loops += self_loops;
    report->duplicates += duplicates;
    report->edges_kept = net.edges_.size();
    report->nodes = static_cast<std::size_t>(std::count_if(
        net.arrival_.begin(), net.arrival_.end(),
        [](Timestamp a) { return a != kNever; }));
  }
  return net;
}

std::string TemporalNetwork::external_id(NodeId v) const {
  if (v < external_ids_.size()) return external_ids_[v];
  return std::to_string(v);
}

std::span<const TimedEdge> TemporalNetwork::edges_between(Timestamp lo,
                                                          Timestamp hi) const {
  auto by_time = [](const TimedEdge& e, Timestamp t) { return e.t < t; };
  auto first = std::lower_bound(edges_.begin(), edges_.end(), lo, by_time);
  auto last = std::lower_bound(first, edges_.end(), hi, by_time);
  return {first, last};
}

Timestamp TemporalNetwork::first_time() const {
  return edges_.empty() ? 0 : edges_.front().t;
}

Timestamp TemporalNetwork::last_time() const {
  return edges_.empty() ? 0 : edges_.back().t;
}

// ---------------------------------------------------------------------------
// Snapshot

Snapshot::Snapshot(const TemporalNetwork& net, Timestamp cutoff, DegreeMode mode)
    : cutoff_(cutoff), mode_(mode) {
  const auto arrivals = net.arrivals();
  present_.assign(arrivals.size(), 0);
  for (NodeId v = 0; v < arrivals.size(); ++v) {
    if (arrivals[v] < cutoff) {
      present_[v] = 1;
      nodes_.push_back(v);
    }
  }
  build(arrivals.size(), net.edges_between(std::numeric_limits<Timestamp>::min(), cutoff));
}

Snapshot Snapshot::from_static(std::size_t num_nodes,
                               std::span<const std::pair<NodeId, NodeId>> edges,
                               DegreeMode mode) {
  Snapshot g;
  g.mode_ = mode;
  g.cutoff_ = 1;
  g.present_.assign(num_nodes, 1);
  g.nodes_.resize(num_nodes);
  std::iota(g.nodes_.begin(), g.nodes_.end(), NodeId{0});
  std::vector<TimedEdge> timed;
  timed.reserve(edges.size());
  for (auto [u, v] : edges) timed.push_back({u, v, 0});
  auto net = TemporalNetwork::from_edges(std::move(timed), num_nodes);
  g.build(num_nodes, net.edges());
  return g;
}

void Snapshot::build(std::size_t id_bound, std::span<const TimedEdge> edges) {
  num_edges_ = edges.size();
  offsets_.assign(id_bound + 1, 0);
  out_count_.assign(id_bound, 0);
  for (const auto& e : edges) {
    ++offsets_[e.src + 1];
    ++offsets_[e.dst + 1];
    ++out_count_[e.src];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adjacency_.resize(2 * edges.size());
  std::vector<std::uint32_t> out_pos(offsets_.begin(), offsets_.end() - 1);
  std::vector<std::uint32_t> in_pos(id_bound);
  for (std::size_t v = 0; v < id_bound; ++v) in_pos[v] = offsets_[v] + out_count_[v];
  for (const auto& e : edges) {
    adjacency_[out_pos[e.src]++] = e.dst;
    adjacency_[in_pos[e.dst]++] = e.src;
  }
}

std::span<const NodeId> Snapshot::neighbors(NodeId v, DegreeMode mode) const {
  const NodeId* begin = adjacency_.data() + offsets_[v];
  const NodeId* split = begin + out_count_[v];
  const NodeId* end = adjacency_.data() + offsets_[v + 1];
  switch (mode) {
    case DegreeMode::kOut:
      return {begin, split};
    case DegreeMode::kIn:
      return {split, end};
    case DegreeMode::kUndirected:
      break;
  }
  return {begin, end};
}

std::uint32_t Snapshot::degree(NodeId v) const {
  switch (mode_) {
    case DegreeMode::kOut:
      return out_count_[v];
    case DegreeMode::kIn:
      return undirected_degree(v) - out_count_[v];
    case DegreeMode::kUndirected:
      break;
  }
  return undirected_degree(v);
}

// ---------------------------------------------------------------------------
// Window attachments

WindowAttachments window_attachments(const TemporalNetwork& net, Timestamp t,
                                     Timestamp dt) {
  if (dt <= 0) throw ConfigError("window length must be positive");
  WindowAttachments w;
  w.begin = t;
  w.end = t + dt;
  for (const auto& e : net.edges_between(w.begin, w.end)) {
    const bool src_old = net.arrival(e.src) < t;
    const bool dst_old = net.arrival(e.dst) < t;
    if (src_old && dst_old) {
      ++w.old_old;
    } else if (!src_old && !dst_old) {
      ++w.new_new;
    } else if (dst_old) {
      w.events.push_back({e.src, e.dst});
    } else {
      w.events.push_back({e.dst, e.src});
    }
  }
  return w;
}

}  // namespace pagrowth
