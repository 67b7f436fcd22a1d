#include "pagrowth/pa_measure.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

#include "csv.hpp"

namespace pagrowth {
namespace {

// Builds rows from per-node class values; class_of(v) gives v's class.
template <typename ClassOf>
AttachmentStats measure_by_class(Axis axis, const Snapshot& g, const WindowAttachments& w,
                                 ClassOf&& class_of) {
  AttachmentStats stats;
  stats.axis = axis;
  stats.window_begin = w.begin;
  stats.window_end = w.end;

  std::vector<std::uint64_t> size;
  std::vector<std::uint64_t> hits;
  auto grow = [&](std::uint32_t v) {
    if (v >= size.size()) {
      size.resize(v + 1, 0);
      hits.resize(v + 1, 0);
    }
  };
  for (NodeId v : g.nodes()) {
    const std::uint32_t cls = class_of(v);
    grow(cls);
    ++size[cls];
  }
  for (const auto& e : w.events) {
    if (!g.contains(e.target)) {
      throw std::invalid_argument("attachment target " + std::to_string(e.target) +
                                  " is not in the snapshot");
    }
    const std::uint32_t cls = class_of(e.target);
    ++hits[cls];
    ++stats.total_events;
  }
  stats.has_events = stats.total_events > 0;

  double norm = 0.0;
  for (std::uint32_t v = 0; v < size.size(); ++v) {
    if (size[v] == 0) continue;
    ClassRow row;
    row.value = v;
    row.size = size[v];
    row.attachments = hits[v];
    row.rate = static_cast<double>(hits[v]) / static_cast<double>(size[v]);
    norm += row.rate;
    stats.rows.push_back(row);
  }
  double running = 0.0;
  for (auto& row : stats.rows) {
    if (stats.has_events) {
      row.rate /= norm;
      running += row.rate;
      row.cumulative = running;
    } else {
      row.rate = 0.0;
      row.cumulative = 0.0;
    }
  }
  return stats;
}

}  // namespace

const ClassRow* AttachmentStats::find(std::uint32_t value) const {
  auto it = std::lower_bound(rows.begin(), rows.end(), value,
                             [](const ClassRow& r, std::uint32_t v) { return r.value < v; });
  return it != rows.end() && it->value == value ? &*it : nullptr;
}

const HybridRow* HybridStats::find(std::uint32_t c, std::uint32_t k) const {
  auto it = std::lower_bound(rows.begin(), rows.end(), std::pair{c, k},
                             [](const HybridRow& r, std::pair<std::uint32_t, std::uint32_t> key) {
                               return std::pair{r.coreness, r.degree} < key;
                             });
  return it != rows.end() && it->coreness == c && it->degree == k ? &*it : nullptr;
}

AttachmentStats measure_degree_pa(const Snapshot& g, const WindowAttachments& w) {
  return measure_by_class(Axis::kDegree, g, w, [&g](NodeId v) { return g.degree(v); });
}

AttachmentStats measure_coreness_pa(const Snapshot& g, const CorenessMap& cm,
                                    const WindowAttachments& w) {
  return measure_by_class(Axis::kCoreness, g, w,
                          [&cm](NodeId v) { return cm.coreness[v]; });
}

HybridStats measure_hybrid(const Snapshot& g, const CorenessMap& cm,
                           const WindowAttachments& w) {
  HybridStats h;
  h.window_begin = w.begin;
  h.window_end = w.end;
  h.total_nodes = g.num_nodes();

  struct Tally {
    std::uint64_t size = 0;
    std::uint64_t hits = 0;
  };
  std::map<std::pair<std::uint32_t, std::uint32_t>, Tally> classes;
  for (NodeId v : g.nodes()) ++classes[{cm.coreness[v], g.degree(v)}].size;
  for (const auto& e : w.events) {
    if (!g.contains(e.target)) {
      throw std::invalid_argument("attachment target " + std::to_string(e.target) +
                                  " is not in the snapshot");
    }
    ++classes[{cm.coreness[e.target], g.degree(e.target)}].hits;
    ++h.total_events;
  }
  h.has_events = h.total_events > 0;

  const double n_total = static_cast<double>(h.total_nodes);
  double norm = 0.0;
  h.rows.reserve(classes.size());
  for (const auto& [key, tally] : classes) {
    HybridRow row;
    row.coreness = key.first;
    row.degree = key.second;
    row.size = tally.size;
    row.attachments = tally.hits;
    row.raw = tally.hits == 0
                  ? 0.0
                  : static_cast<double>(tally.hits) * n_total / static_cast<double>(tally.size);
    norm += row.raw;
    h.rows.push_back(row);
  }
  if (h.has_events) {
    for (auto& row : h.rows) row.rate = row.raw / norm;
  }
  return h;
}

LocalizedCurve phi_within_shell(const HybridStats& h, std::uint32_t c0) {
  LocalizedCurve curve;
  curve.fixed_axis = Axis::kCoreness;
  curve.fixed_value = c0;
  double running = 0.0;
  // Rows are sorted by (c, k), so the shell's degrees come out ascending.
  for (const auto& row : h.rows) {
    if (row.coreness != c0) continue;
    running += row.rate;
    curve.points.push_back({row.degree, row.size, row.rate, running});
  }
  if (curve.points.empty()) {
    throw std::invalid_argument("shell c0=" + std::to_string(c0) + " is empty");
  }
  return curve;
}

LocalizedCurve pi_among_shells(const HybridStats& h, std::uint32_t k0) {
  LocalizedCurve curve;
  curve.fixed_axis = Axis::kDegree;
  curve.fixed_value = k0;
  double running = 0.0;
  for (const auto& row : h.rows) {
    if (row.degree != k0) continue;
    running += row.rate;
    curve.points.push_back({row.coreness, row.size, row.rate, running});
  }
  if (curve.points.empty()) {
    throw std::invalid_argument("degree class k0=" + std::to_string(k0) + " is empty");
  }
  return curve;
}

std::vector<std::uint32_t> shells_of(const HybridStats& h) {
  std::vector<std::uint32_t> out;
  for (const auto& row : h.rows) {
    if (out.empty() || out.back() != row.coreness) out.push_back(row.coreness);
  }
  return out;
}

std::vector<std::uint32_t> degrees_of(const HybridStats& h) {
  std::vector<std::uint32_t> out;
  for (const auto& row : h.rows) out.push_back(row.degree);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void write_attachment_csv(std::ostream& out, const AttachmentStats& stats) {
  out << "axis_value,A,n,T,kappa\n";
  for (const auto& row : stats.rows) {
    out << row.value << ',' << row.attachments << ',' << row.size << ',';
    if (stats.has_events) {
      out << csv::format_double(row.rate) << ',' << csv::format_double(row.cumulative);
    } else {
      out << ',';
    }
    out << '\n';
  }
}

AttachmentStats read_attachment_csv(std::istream& in, Axis axis) {
  AttachmentStats stats;
  stats.axis = axis;
  csv::Reader reader(in, "axis_value,A,n,T,kappa");
  bool any_blank = false;
  while (auto row = reader.next()) {
    ClassRow r;
    r.value = reader.get_uint32(*row, 0);
    r.attachments = reader.get_uint64(*row, 1);
    r.size = reader.get_uint64(*row, 2);
    if (reader.is_empty(*row, 3)) {
      any_blank = true;
    } else {
      r.rate = reader.get_double(*row, 3);
      r.cumulative = reader.get_double(*row, 4);
    }
    stats.total_events += r.attachments;
    stats.rows.push_back(r);
  }
  stats.has_events = !any_blank && stats.total_events > 0;
  return stats;
}

void write_hybrid_csv(std::ostream& out, const HybridStats& h) {
  out << "c,k,n,T\n";
  for (const auto& row : h.rows) {
    out << row.coreness << ',' << row.degree << ',' << row.size << ',';
    if (h.has_events) out << csv::format_double(row.rate);
    out << '\n';
  }
}

HybridStats read_hybrid_csv(std::istream& in) {
  HybridStats h;
  csv::Reader reader(in, "c,k,n,T");
  bool any_blank = false;
  bool any_mass = false;
  while (auto row = reader.next()) {
    HybridRow r;
    r.coreness = reader.get_uint32(*row, 0);
    r.degree = reader.get_uint32(*row, 1);
    r.size = reader.get_uint64(*row, 2);
    if (reader.is_empty(*row, 3)) {
      any_blank = true;
    } else {
      r.rate = reader.get_double(*row, 3);
      any_mass = any_mass || r.rate > 0.0;
    }
    h.total_nodes += r.size;
    h.rows.push_back(r);
  }
  h.has_events = !any_blank && any_mass;
  return h;
}

void write_curve_csv(std::ostream& out, const LocalizedCurve& curve) {
  out << "value,n,T,cumulative\n";
  for (const auto& p : curve.points) {
    out << p.value << ',' << p.size << ',' << csv::format_double(p.rate) << ','
        << csv::format_double(p.cumulative) << '\n';
  }
}

}  // namespace pagrowth
