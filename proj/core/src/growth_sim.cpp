#include "pagrowth/growth_sim.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "pagrowth/error.hpp"
#include "pagrowth/kcore.hpp"

namespace pagrowth {

std::string_view to_string(KernelMode mode) {
  switch (mode) {
    case KernelMode::kDegreeOnly:
      return "degree_only";
    case KernelMode::kCorenessOnly:
      return "coreness_only";
    case KernelMode::kHybrid:
      return "hybrid";
  }
  return "degree_only";
}

std::optional<KernelMode> parse_kernel_mode(std::string_view text) {
  for (auto mode : {KernelMode::kDegreeOnly, KernelMode::kCorenessOnly, KernelMode::kHybrid}) {
    if (to_string(mode) == text) return mode;
  }
  return std::nullopt;
}

std::string_view to_string(OutDegreeLaw law) {
  switch (law) {
    case OutDegreeLaw::kFixed:
      return "fixed";
    case OutDegreeLaw::kUniform:
      return "uniform";
    case OutDegreeLaw::kGeometric:
      return "geometric";
    case OutDegreeLaw::kPowerLaw:
      return "power_law";
  }
  return "fixed";
}

std::optional<OutDegreeLaw> parse_out_degree_law(std::string_view text) {
  for (auto law : {OutDegreeLaw::kFixed, OutDegreeLaw::kUniform, OutDegreeLaw::kGeometric,
                   OutDegreeLaw::kPowerLaw}) {
    if (to_string(law) == text) return law;
  }
  return std::nullopt;
}

void KernelSpec::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("kernel alpha must be >= 0");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ConfigError("kernel beta must be >= 0");
  if (!(degree_offset > 0.0) || !std::isfinite(degree_offset)) {
    throw ConfigError("kernel degree_offset must be > 0");
  }
}

double kernel_weight(const KernelSpec& kernel, std::uint32_t c, std::uint32_t k) {
  const double degree_part = std::pow(static_cast<double>(k) + kernel.degree_offset, kernel.alpha);
  const double core_part = std::exp(kernel.beta * static_cast<double>(c));
  switch (kernel.mode) {
    case KernelMode::kDegreeOnly:
      return degree_part;
    case KernelMode::kCorenessOnly:
      return core_part;
    case KernelMode::kHybrid:
      break;
  }
  return core_part * degree_part;
}

std::size_t SimConfig::seed_size() const {
  if (seed_edges.empty()) return static_cast<std::size_t>(m) + 1;
  NodeId top = 0;
  for (auto [u, v] : seed_edges) top = std::max({top, u, v});
  return static_cast<std::size_t>(top) + 1;
}

void SimConfig::validate() const {
  if (m < 1) throw ConfigError("m must be >= 1");
  if (coreness_refresh < 1) throw ConfigError("coreness_refresh must be >= 1");
  if (out_degree == OutDegreeLaw::kPowerLaw && !(out_degree_tail > 1.0)) {
    throw ConfigError("out_degree_tail must be > 1");
  }
  const std::size_t s = seed_size();
  if (s < m) {
    throw ConfigError("seed graph has " + std::to_string(s) + " nodes, fewer than m=" +
                      std::to_string(m));
  }
  if (n_final <= s) {
    throw ConfigError("n_final must exceed the seed size " + std::to_string(s));
  }
  for (auto [u, v] : seed_edges) {
    if (u == v) throw ConfigError("seed graph contains a self-loop");
  }
}

namespace {

// Fenwick tree over nonnegative weights with prefix-sum descent.
class WeightTree {
 public:
  explicit WeightTree(std::size_t capacity) : tree_(capacity + 1, 0.0), weight_(capacity, 0.0) {
    top_bit_ = 1;
    while (top_bit_ * 2 <= capacity) top_bit_ *= 2;
  }

  void set(std::size_t i, double w) {
    const double delta = w - weight_[i];
    weight_[i] = w;
    for (std::size_t j = i + 1; j < tree_.size(); j += j & (~j + 1)) tree_[j] += delta;
  }

  double get(std::size_t i) const { return weight_[i]; }

  // Recomputes internal sums from the stored weights to shed rounding drift.
  void rebuild() {
    std::fill(tree_.begin(), tree_.end(), 0.0);
    for (std::size_t i = 0; i < weight_.size(); ++i) {
      tree_[i + 1] += weight_[i];
      const std::size_t parent = (i + 1) + ((i + 1) & (~(i + 1) + 1));
      if (parent < tree_.size()) tree_[parent] += tree_[i + 1];
    }
  }

  double total(std::size_t n) const {
    double s = 0.0;
    for (std::size_t j = n; j > 0; j -= j & (~j + 1)) s += tree_[j];
    return s;
  }

  // Smallest index i < n whose inclusive prefix sum exceeds `target`, skipping
  // zero-weight entries.
  std::size_t find(double target, std::size_t n) const {
    std::size_t pos = 0;
    for (std::size_t step = top_bit_; step > 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next < tree_.size() && tree_[next] <= target) {
        pos = next;
        target -= tree_[next];
      }
    }
    // pos is the count of entries whose prefix is <= target.
    std::size_t i = std::min(pos, n - 1);
    while (i > 0 && weight_[i] <= 0.0) --i;
    while (i + 1 < n && weight_[i] <= 0.0) ++i;
    return i;
  }

 private:
  std::vector<double> tree_;
  std::vector<double> weight_;
  std::size_t top_bit_ = 1;
};

// Uniform double in [0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint32_t draw_out_degree(const SimConfig& cfg, std::mt19937_64& rng) {
  switch (cfg.out_degree) {
    case OutDegreeLaw::kFixed:
      return cfg.m;
    case OutDegreeLaw::kUniform: {
      const std::uint64_t span = 2ULL * cfg.m - 1;
      return static_cast<std::uint32_t>(1 + static_cast<std::uint64_t>(uniform01(rng) * span));
    }
    case OutDegreeLaw::kGeometric: {
      if (cfg.m == 1) return 1;
      // Failures before the first success with p = 1/m, shifted to start at 1.
      const double p = 1.0 / cfg.m;
      const double u = 1.0 - uniform01(rng);  // (0, 1]
      return 1 + static_cast<std::uint32_t>(std::floor(std::log(u) / std::log1p(-p)));
    }
    case OutDegreeLaw::kPowerLaw: {
      if (cfg.m == 1) return 1;
      // floor of a Pareto variate; E[floor X] ~ x_min * shape / (shape - 1) - 1/2 = m.
      const double mean = static_cast<double>(cfg.m);
      const double shape = cfg.out_degree_tail;
      const double xmin = (mean + 0.5) * (shape - 1.0) / shape;
      const double u = 1.0 - uniform01(rng);  // (0, 1]
      const double x = xmin * std::pow(u, -1.0 / shape);
      if (x >= 4.0e9) return 4000000000U;
      return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(x));
    }
  }
  return cfg.m;
}

// Memoized kernel weights over a (c, k) grid that grows on demand.
class KernelTable {
 public:
  explicit KernelTable(const KernelSpec& kernel) : kernel_(kernel) {}

  double operator()(std::uint32_t c, std::uint32_t k) {
    if (kernel_.mode == KernelMode::kDegreeOnly) c = 0;
    if (kernel_.mode == KernelMode::kCorenessOnly) k = 0;
    while (degree_part_.size() <= k) {
      degree_part_.push_back(
          std::pow(static_cast<double>(degree_part_.size()) + kernel_.degree_offset, kernel_.alpha));
    }
    while (core_part_.size() <= c) {
      core_part_.push_back(std::exp(kernel_.beta * static_cast<double>(core_part_.size())));
    }
    switch (kernel_.mode) {
      case KernelMode::kDegreeOnly:
        return degree_part_[k];
      case KernelMode::kCorenessOnly:
        return core_part_[c];
      case KernelMode::kHybrid:
        break;
    }
    return core_part_[c] * degree_part_[k];
  }

 private:
  KernelSpec kernel_;
  std::vector<double> degree_part_;
  std::vector<double> core_part_;
};

}  // namespace

TemporalNetwork simulate(const SimConfig& config, const KernelSpec& kernel,
                         const SimObserver& observer) {
  config.validate();
  kernel.validate();

  const std::size_t n_final = config.n_final;
  const std::size_t seed_n = config.seed_size();
  const bool needs_coreness = kernel.mode != KernelMode::kDegreeOnly;

  std::vector<std::vector<NodeId>> adj(n_final);
  std::vector<std::uint32_t> degree(n_final, 0);
  std::vector<std::uint32_t> coreness(n_final, 0);
  std::vector<TimedEdge> edges;
  edges.reserve(seed_n * seed_n + n_final * config.m * 2);

  std::set<std::pair<NodeId, NodeId>> seed_pairs;
  if (config.seed_edges.empty()) {
    for (NodeId u = 0; u < seed_n; ++u) {
      for (NodeId v = u + 1; v < seed_n; ++v) seed_pairs.insert({u, v});
    }
  } else {
    for (auto [u, v] : config.seed_edges) seed_pairs.insert({std::min(u, v), std::max(u, v)});
  }
  for (auto [u, v] : seed_pairs) {
    adj[u].push_back(v);
    adj[v].push_back(u);
    ++degree[u];
    ++degree[v];
    edges.push_back({u, v, 0});
  }

  std::mt19937_64 rng(config.rng_seed);
  KernelTable weight_of(kernel);
  WeightTree tree(n_final);
  auto refresh_coreness = [&](std::size_t n_existing) {
    auto fresh = peel_coreness(n_existing, [&adj](NodeId v) -> const std::vector<NodeId>& {
      return adj[v];
    });
    for (std::size_t v = 0; v < n_existing; ++v) {
      if (fresh[v] != coreness[v]) {
        coreness[v] = fresh[v];
        tree.set(v, weight_of(coreness[v], degree[v]));
      }
    }
  };
  for (std::size_t v = 0; v < seed_n; ++v) tree.set(v, weight_of(0, degree[v]));

  std::vector<NodeId> chosen;
  for (std::size_t v = seed_n; v < n_final; ++v) {
    const std::size_t n_existing = v;
    const Timestamp tick = static_cast<Timestamp>(v - seed_n + 1);
    if (needs_coreness && (tick - 1) % config.coreness_refresh == 0) {
      refresh_coreness(n_existing);
    }
    if ((tick & 1023) == 0) tree.rebuild();
    if (observer) {
      observer(SimTick{tick, static_cast<NodeId>(v),
                       std::span<const std::uint32_t>(coreness.data(), n_existing),
                       std::span<const std::uint32_t>(degree.data(), n_existing)});
    }

    const std::uint32_t want =
        static_cast<std::uint32_t>(std::min<std::size_t>(draw_out_degree(config, rng), n_existing));
    chosen.clear();
    for (std::uint32_t j = 0; j < want; ++j) {
      const double total = tree.total(n_existing);
      const std::size_t target = tree.find(uniform01(rng) * total, n_existing);
      chosen.push_back(static_cast<NodeId>(target));
      tree.set(target, 0.0);
    }
    for (NodeId u : chosen) {
      adj[v].push_back(u);
      adj[u].push_back(static_cast<NodeId>(v));
      ++degree[u];
      ++degree[v];
      edges.push_back({static_cast<NodeId>(v), u, tick});
      tree.set(u, weight_of(coreness[u], degree[u]));
    }
    tree.set(v, weight_of(coreness[v], degree[v]));
  }
  return TemporalNetwork::from_edges(std::move(edges), n_final, TimeUnit::kTicks);
}

void write_sim_metadata(std::ostream& out, const SimConfig& config, const KernelSpec& kernel) {
  nlohmann::ordered_json meta;
  meta["generator"] = "pagrowth simulate";
  meta["config"] = {{"n_final", config.n_final},
                    {"m", config.m},
                    {"out_degree", to_string(config.out_degree)},
                    {"out_degree_tail", config.out_degree_tail},
                    {"seed_size", config.seed_size()},
                    {"seed_graph", config.seed_edges.empty() ? "clique" : "explicit"},
                    {"rng_seed", config.rng_seed},
                    {"coreness_refresh", config.coreness_refresh}};
  if (!config.seed_edges.empty()) {
    auto& list = meta["config"]["seed_edges"];
    list = nlohmann::ordered_json::array();
    for (auto [u, v] : config.seed_edges) list.push_back({u, v});
  }
  meta["kernel"] = {{"mode", to_string(kernel.mode)},
                    {"alpha", kernel.alpha},
                    {"beta", kernel.beta},
                    {"degree_offset", kernel.degree_offset}};
  meta["time_unit"] = "tick";
  out << meta.dump(2) << '\n';
}

}  // namespace pagrowth
