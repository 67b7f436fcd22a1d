#include "pagrowth/kcore.hpp"

#include <istream>
#include <limits>
#include <ostream>

#include "csv.hpp"
#include "pagrowth/error.hpp"

namespace pagrowth {

CorenessMap core_decomposition(const Snapshot& g) {
  CorenessMap cm;
  cm.coreness = peel_coreness(g.id_bound(), [&g](NodeId v) { return g.neighbors(v); });
  for (NodeId v : g.nodes()) cm.max_core = std::max(cm.max_core, cm.coreness[v]);
  if (g.num_nodes() > 0) cm.shells.resize(cm.max_core + 1);
  for (NodeId v : g.nodes()) cm.shells[cm.coreness[v]].push_back(v);
  return cm;
}

std::size_t ShellStats::total_nodes() const {
  std::size_t total = 0;
  for (const auto& s : shells) total += s.size;
  return total;
}

ShellStats shell_stats(const Snapshot& g, const CorenessMap& cm) {
  ShellStats stats;
  for (std::uint32_t c = 0; c < cm.shells.size(); ++c) {
    const auto& members = cm.shells[c];
    if (members.empty()) continue;
    ShellSummary s;
    s.coreness = c;
    s.size = members.size();
    s.min_degree = std::numeric_limits<std::uint32_t>::max();
    std::uint64_t sum = 0;
    for (NodeId v : members) {
      const std::uint32_t k = g.degree(v);
      sum += k;
      s.min_degree = std::min(s.min_degree, k);
      s.max_degree = std::max(s.max_degree, k);
    }
    s.mean_degree = static_cast<double>(sum) / static_cast<double>(s.size);
    stats.shells.push_back(s);
  }
  return stats;
}

void write_coreness_csv(std::ostream& out, const Snapshot& g, const CorenessMap& cm) {
  out << "node,coreness,degree\n";
  for (NodeId v : g.nodes()) {
    out << v << ',' << cm.coreness[v] << ',' << g.degree(v) << '\n';
  }
}

void write_shell_csv(std::ostream& out, const ShellStats& stats) {
  out << "c,n,mean_degree,min_degree,max_degree\n";
  for (const auto& s : stats.shells) {
    out << s.coreness << ',' << s.size << ',' << csv::format_double(s.mean_degree) << ','
        << s.min_degree << ',' << s.max_degree << '\n';
  }
}

ShellStats read_shell_csv(std::istream& in) {
  ShellStats stats;
  csv::Reader reader(in, "c,n,mean_degree,min_degree,max_degree");
  while (auto row = reader.next()) {
    ShellSummary s;
    s.coreness = reader.get_uint32(*row, 0);
    s.size = reader.get_uint64(*row, 1);
    s.mean_degree = reader.get_double(*row, 2);
    s.min_degree = reader.get_uint32(*row, 3);
    s.max_degree = reader.get_uint32(*row, 4);
    stats.shells.push_back(s);
  }
  return stats;
}

}  // namespace pagrowth
