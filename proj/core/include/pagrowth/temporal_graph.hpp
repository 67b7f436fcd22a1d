#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pagrowth {

// Dense node index, contiguous 0..N-1 after ingestion.
using NodeId = std::uint32_t;

// Integer days since 1970-01-01 for dated data, or an abstract tick.
using Timestamp = std::int64_t;

inline constexpr Timestamp kDaysPerYear = 365;
inline constexpr Timestamp kNever = std::numeric_limits<Timestamp>::max();

enum class TimeUnit { kDays, kTicks };

// Which incident edges count towards a node's degree. Edges are read as
// src -> dst (citing -> cited); kIn counts citations received.
enum class DegreeMode { kUndirected, kIn, kOut };

std::string_view to_string(DegreeMode mode);
std::optional<DegreeMode> parse_degree_mode(std::string_view text);

// Calendar helpers. Dates are proleptic Gregorian, YYYY-MM-DD.
std::optional<Timestamp> parse_iso_date(std::string_view text);
std::string format_iso_date(Timestamp days);
// First January 1 strictly after `days`.
Timestamp next_new_year(Timestamp days);

struct TimedEdge {
  NodeId src = 0;
  NodeId dst = 0;
  Timestamp t = 0;

  friend bool operator==(const TimedEdge&, const TimedEdge&) = default;
};

// Edge as read from an input file, before id remapping.
struct RawEdge {
  std::string src;
  std::string dst;
  Timestamp t = 0;
};

struct IngestOptions {
  // Drop this prefix from SNAP dates-file ids (cross-listed papers). Empty
  // disables the rewrite.
  std::string snap_strip_prefix;
};

struct IngestReport {
  std::size_t lines = 0;
  // `#` lines and blank lines.
  std::size_t comment_lines = 0;
  std::size_t edges_read = 0;
  std::size_t edges_kept = 0;
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
  // SNAP adapter: edges whose citing node has no date.
  std::size_t missing_dates = 0;
  std::size_t nodes = 0;
};

// Immutable, time-sorted record of timestamped edges. Node arrival is the
// earliest timestamp of any incident edge.
class TemporalNetwork {
 public:
  TemporalNetwork() = default;

  // Takes dense-id edges as given. Self-loops and repeated node pairs (in
  // either orientation) are dropped, keeping the earliest; ties in time keep
  // input order. `num_nodes` may exceed the largest id (nodes without edges
  // never arrive). Counters are added to `report` when non-null.
  static TemporalNetwork from_edges(std::vector<TimedEdge> edges,
                                    std::size_t num_nodes,
                                    TimeUnit unit = TimeUnit::kTicks,
                                    std::vector<std::string> external_ids = {},
                                    IngestReport* report = nullptr);

  std::span<const TimedEdge> edges() const { return edges_; }
  std::size_t num_nodes() const { return arrival_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  TimeUnit time_unit() const { return unit_; }

  // kNever for a node without edges.
  Timestamp arrival(NodeId v) const { return arrival_[v]; }
  std::span<const Timestamp> arrivals() const { return arrival_; }

  // External id from the input, or the decimal dense id when none was kept.
  std::string external_id(NodeId v) const;

  // Edges with lo <= t < hi.
  std::span<const TimedEdge> edges_between(Timestamp lo, Timestamp hi) const;

  Timestamp first_time() const;
  Timestamp last_time() const;

 private:
  std::vector<TimedEdge> edges_;
  std::vector<Timestamp> arrival_;
  std::vector<std::string> external_ids_;
  TimeUnit unit_ = TimeUnit::kTicks;
};

struct IngestResult {
  TemporalNetwork network;
  IngestReport report;
};

// Remaps external ids to dense ids in order of first appearance in the
// time-sorted stream, then builds the network.
IngestResult ingest(std::vector<RawEdge> raw, TimeUnit unit,
                    IngestReport report = {});

// Generic format: `src<TAB>dst<TAB>timestamp` per line, timestamp either
// YYYY-MM-DD or an integer. `#` lines and blank lines are skipped. Throws
// ParseError on a malformed line.
IngestResult ingest_generic(std::istream& in, const IngestOptions& options = {});

// SNAP citation pair: `FromNodeId<TAB>ToNodeId` edges and
// `NodeId<TAB>YYYY-MM-DD` dates. An edge takes the citing node's date; edges
// whose citing node is undated are skipped and counted.
IngestResult ingest_snap(std::istream& edges, std::istream& dates,
                         const IngestOptions& options = {});

// Writes the network in the generic format with dense ids, edges in stored
// order. Day-unit timestamps are written as ISO dates.
void write_generic(std::ostream& out, const TemporalNetwork& net);

// Side table `dense_id<TAB>external_id`.
void write_id_table(std::ostream& out, const TemporalNetwork& net);

// Static graph "as of" a cutoff: every edge with t < cutoff. Undirected
// adjacency is stored as CSR with each node's out-neighbors first.
class Snapshot {
 public:
  Snapshot(const TemporalNetwork& net, Timestamp cutoff,
           DegreeMode mode = DegreeMode::kUndirected);

  // All `num_nodes` nodes present, edges given as unordered pairs.
  // Duplicate pairs and self-loops are ignored.
  static Snapshot from_static(std::size_t num_nodes,
                              std::span<const std::pair<NodeId, NodeId>> edges,
                              DegreeMode mode = DegreeMode::kUndirected);

  Timestamp cutoff() const { return cutoff_; }
  DegreeMode mode() const { return mode_; }

  // Size of the id space (includes nodes not yet arrived).
  std::size_t id_bound() const { return present_.size(); }
  // N(t): nodes that arrived before the cutoff.
  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  std::span<const NodeId> nodes() const { return nodes_; }
  bool contains(NodeId v) const { return v < present_.size() && present_[v]; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::span<const NodeId> neighbors(NodeId v, DegreeMode mode) const;

  std::uint32_t undirected_degree(NodeId v) const {
    return offsets_[v + 1] - offsets_[v];
  }
  // Degree under mode().
  std::uint32_t degree(NodeId v) const;

 private:
  Snapshot() = default;
  void build(std::size_t id_bound, std::span<const TimedEdge> edges);

  Timestamp cutoff_ = 0;
  DegreeMode mode_ = DegreeMode::kUndirected;
  std::size_t num_edges_ = 0;
  std::vector<NodeId> nodes_;
  std::vector<char> present_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> out_count_;
  std::vector<NodeId> adjacency_;
};

struct AttachmentEvent {
  NodeId new_node = 0;
  NodeId target = 0;

  friend bool operator==(const AttachmentEvent&, const AttachmentEvent&) = default;
};

// Links formed in [begin, end) from nodes arriving in the window to nodes
// that arrived before it. Edges among two new or two old nodes are tallied.
struct WindowAttachments {
  Timestamp begin = 0;
  Timestamp end = 0;
  std::vector<AttachmentEvent> events;
  std::size_t new_new = 0;
  std::size_t old_old = 0;
};

// Throws ConfigError when dt <= 0.
WindowAttachments window_attachments(const TemporalNetwork& net, Timestamp t,
                                     Timestamp dt);

}  // namespace pagrowth
