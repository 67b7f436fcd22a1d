#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "pagrowth/temporal_graph.hpp"

namespace pagrowth {

enum class KernelMode { kDegreeOnly, kCorenessOnly, kHybrid };

std::string_view to_string(KernelMode mode);
std::optional<KernelMode> parse_kernel_mode(std::string_view text);

// Attachment kernel of the growth simulator:
//   degree_only    (k + offset)^alpha
//   coreness_only  exp(beta * c)
//   hybrid         exp(beta * c) * (k + offset)^alpha
struct KernelSpec {
  KernelMode mode = KernelMode::kDegreeOnly;
  double alpha = 1.0;
  double beta = 0.0;
  double degree_offset = 1.0;

  // Throws ConfigError for negative exponents or a nonpositive offset.
  void validate() const;
};

double kernel_weight(const KernelSpec& kernel, std::uint32_t c, std::uint32_t k);

// How many distinct targets each new node cites.
enum class OutDegreeLaw {
  kFixed,      // always m
  kUniform,    // uniform on 1..2m-1
  kGeometric,  // geometric on 1, 2, ... with mean m
  kPowerLaw,   // floor of a Pareto variate with mean about m
};

std::string_view to_string(OutDegreeLaw law);
std::optional<OutDegreeLaw> parse_out_degree_law(std::string_view text);

struct SimConfig {
  std::size_t n_final = 1000;
  std::uint32_t m = 3;
  OutDegreeLaw out_degree = OutDegreeLaw::kFixed;
  // Pareto shape for kPowerLaw; must exceed 1.
  double out_degree_tail = 2.5;
  // Seed graph on nodes 0..s-1. Empty means an (m+1)-clique.
  std::vector<std::pair<NodeId, NodeId>> seed_edges;
  std::uint64_t rng_seed = 1;
  // Coreness is recomputed before every `coreness_refresh`-th tick. With a
  // value above 1 it goes stale in between, and nodes that joined since the
  // last refresh count as coreness 0.
  std::uint32_t coreness_refresh = 1;

  // Throws ConfigError on m < 1, a seed smaller than m, n_final not above
  // the seed size, or a malformed seed.
  void validate() const;
  std::size_t seed_size() const;
};

// Pre-tick state handed to an observer: the node about to join and the
// coreness/degree arrays the kernel is evaluated on (indexed by NodeId,
// covering existing nodes).
struct SimTick {
  Timestamp tick = 0;
  NodeId new_node = 0;
  std::span<const std::uint32_t> coreness;
  std::span<const std::uint32_t> degree;
};

using SimObserver = std::function<void(const SimTick&)>;

// One node joins per tick and cites distinct existing nodes drawn without
// replacement with probability proportional to the kernel on the pre-tick
// state. Seed edges carry t = 0, node j's edges t = j - seed_size + 1.
// Bit-identical output for identical inputs.
TemporalNetwork simulate(const SimConfig& config, const KernelSpec& kernel,
                         const SimObserver& observer = {});

// JSON sidecar recording the config and kernel.
void write_sim_metadata(std::ostream& out, const SimConfig& config, const KernelSpec& kernel);

}  // namespace pagrowth
