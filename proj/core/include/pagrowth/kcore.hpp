#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pagrowth/temporal_graph.hpp"

namespace pagrowth {

// Coreness of every node in a snapshot. `coreness` is indexed by NodeId over
// the snapshot's id space; nodes not in the snapshot read 0 and belong to no
// shell.
struct CorenessMap {
  std::vector<std::uint32_t> coreness;
  std::uint32_t max_core = 0;
  // shells[c] lists the members of shell c in ascending id order; shells
  // with no members are empty.
  std::vector<std::vector<NodeId>> shells;
};

// Bucketed min-degree peeling (Batagelj-Zaversnik). `neighbors_of(v)` must
// return an iterable range of NodeId; every id in 0..n-1 is peeled. Runs in
// O(n + m).
template <typename NeighborsFn>
std::vector<std::uint32_t> peel_coreness(std::size_t n, NeighborsFn&& neighbors_of) {
  std::vector<std::uint32_t> deg(n);
  std::uint32_t max_deg = 0;
  for (std::size_t v = 0; v < n; ++v) {
    std::uint32_t d = 0;
    for ([[maybe_unused]] auto u : neighbors_of(static_cast<NodeId>(v))) ++d;
    deg[v] = d;
    max_deg = std::max(max_deg, d);
  }
  // bin[d] = first position in `order` of nodes with current degree d.
  std::vector<std::uint32_t> bin(max_deg + 2, 0);
  for (std::size_t v = 0; v < n; ++v) ++bin[deg[v] + 1];
  for (std::size_t d = 1; d < bin.size(); ++d) bin[d] += bin[d - 1];
  std::vector<NodeId> order(n);
  std::vector<std::uint32_t> pos(n);
  {
    std::vector<std::uint32_t> next(bin.begin(), bin.end() - 1);
    for (std::size_t v = 0; v < n; ++v) {
      pos[v] = next[deg[v]]++;
      order[pos[v]] = static_cast<NodeId>(v);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId v = order[i];
    for (auto u : neighbors_of(v)) {
      if (deg[u] > deg[v]) {
        // Swap u to the front of its bin, then shrink it into bin deg-1.
        const std::uint32_t du = deg[u];
        const std::uint32_t pu = pos[u];
        const std::uint32_t pw = bin[du];
        const NodeId w = order[pw];
        if (u != w) {
          order[pu] = w;
          pos[w] = pu;
          order[pw] = u;
          pos[u] = pw;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  return deg;
}

CorenessMap core_decomposition(const Snapshot& g);

struct ShellSummary {
  std::uint32_t coreness = 0;
  std::size_t size = 0;
  double mean_degree = 0.0;
  std::uint32_t min_degree = 0;
  std::uint32_t max_degree = 0;
};

// Per-shell sizes and degree summaries, ascending in coreness; empty shells
// omitted. Degrees follow the snapshot's degree mode.
struct ShellStats {
  std::vector<ShellSummary> shells;

  std::size_t total_nodes() const;
};

ShellStats shell_stats(const Snapshot& g, const CorenessMap& cm);

// `node,coreness,degree` rows for every node in the snapshot.
void write_coreness_csv(std::ostream& out, const Snapshot& g, const CorenessMap& cm);

// `c,n,mean_degree,min_degree,max_degree` rows.
void write_shell_csv(std::ostream& out, const ShellStats& stats);
ShellStats read_shell_csv(std::istream& in);

}  // namespace pagrowth
