#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pagrowth/kcore.hpp"
#include "pagrowth/temporal_graph.hpp"

namespace pagrowth {

enum class Axis { kDegree, kCoreness };

// One class (degree k or coreness c) of the snapshot.
struct ClassRow {
  std::uint32_t value = 0;
  // A(v): window attachment events landing on nodes of this class.
  std::uint64_t attachments = 0;
  // n_v(t): class size at the cutoff. Always > 0.
  std::uint64_t size = 0;
  // T(v) and the running sum kappa(v); meaningful only when has_events.
  double rate = 0.0;
  double cumulative = 0.0;
};

// Attachment rate table for one window. Rows are ascending in value and
// cover exactly the classes present in the snapshot.
struct AttachmentStats {
  Axis axis = Axis::kDegree;
  Timestamp window_begin = 0;
  Timestamp window_end = 0;
  std::uint64_t total_events = 0;
  // False for a window without events: rate and cumulative are undefined.
  bool has_events = false;
  std::vector<ClassRow> rows;

  const ClassRow* find(std::uint32_t value) const;
};

// Degree-class attachment rates, normalized over classes, with the
// cumulative curve kappa(k).
AttachmentStats measure_degree_pa(const Snapshot& g, const WindowAttachments& w);

// The same over coreness classes.
AttachmentStats measure_coreness_pa(const Snapshot& g, const CorenessMap& cm,
                                    const WindowAttachments& w);

struct HybridRow {
  std::uint32_t coreness = 0;
  std::uint32_t degree = 0;
  std::uint64_t attachments = 0;
  // n_{c,k}(t), always > 0.
  std::uint64_t size = 0;
  // attachments * N(t) / size, before normalization.
  double raw = 0.0;
  double rate = 0.0;
};

// Joint (coreness, degree) attachment table. Rows sorted by (c, k).
struct HybridStats {
  Timestamp window_begin = 0;
  Timestamp window_end = 0;
  std::uint64_t total_nodes = 0;
  std::uint64_t total_events = 0;
  bool has_events = false;
  std::vector<HybridRow> rows;

  const HybridRow* find(std::uint32_t c, std::uint32_t k) const;
};

HybridStats measure_hybrid(const Snapshot& g, const CorenessMap& cm,
                           const WindowAttachments& w);

struct CurvePoint {
  // Free coordinate: k for a within-shell curve, c for an among-shell one.
  std::uint32_t value = 0;
  std::uint64_t size = 0;
  double rate = 0.0;
  double cumulative = 0.0;
};

// Cumulative attachment along one axis with the other held fixed.
struct LocalizedCurve {
  Axis fixed_axis = Axis::kCoreness;
  std::uint32_t fixed_value = 0;
  std::vector<CurvePoint> points;
};

// Phi(c0, k): running sum of T(c0, k') over k' <= k. Throws
// std::invalid_argument when shell c0 has no nodes.
LocalizedCurve phi_within_shell(const HybridStats& h, std::uint32_t c0);

// Pi(c, k0): running sum of T(c', k0) over c' <= c. Throws
// std::invalid_argument when no node has degree k0.
LocalizedCurve pi_among_shells(const HybridStats& h, std::uint32_t k0);

// Distinct shells / degree classes present in the table, ascending.
std::vector<std::uint32_t> shells_of(const HybridStats& h);
std::vector<std::uint32_t> degrees_of(const HybridStats& h);

// CSV: `axis_value,A,n,T,kappa`. T and kappa are left blank for a window
// without events.
void write_attachment_csv(std::ostream& out, const AttachmentStats& stats);
AttachmentStats read_attachment_csv(std::istream& in, Axis axis);

// CSV: `c,k,n,T`. Reading restores sizes and rates only.
void write_hybrid_csv(std::ostream& out, const HybridStats& h);
HybridStats read_hybrid_csv(std::istream& in);

// CSV: `value,n,T,cumulative`.
void write_curve_csv(std::ostream& out, const LocalizedCurve& curve);

}  // namespace pagrowth
