#pragma once

// Brute-force reference implementations. Nothing here shares code with the
// library beyond its public data types.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "pagrowth/temporal_graph.hpp"

namespace oracle {

using Edge = std::pair<pagrowth::NodeId, pagrowth::NodeId>;

// Erdos-Renyi G(n, p) without self-loops or repeated pairs.
inline std::vector<Edge> random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  std::bernoulli_distribution coin(p);
  for (pagrowth::NodeId u = 0; u < n; ++u) {
    for (pagrowth::NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return edges;
}

// Coreness by the definition: for k = 1, 2, ... repeatedly delete every node
// of degree < k until none remains; survivors of round k have coreness >= k.
inline std::vector<std::uint32_t> naive_coreness(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::set<pagrowth::NodeId>> adj(n);
  for (auto [u, v] : edges) {
    if (u == v) continue;
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<std::uint32_t> core(n, 0);
  std::vector<bool> alive(n, true);
  for (std::uint32_t k = 1;; ++k) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        std::size_t deg = 0;
        for (auto w : adj[v]) deg += alive[w] ? 1 : 0;
        if (deg < k) {
          alive[v] = false;
          changed = true;
        }
      }
    }
    bool any = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (alive[v]) {
        core[v] = k;
        any = true;
      }
    }
    if (!any) break;
  }
  return core;
}

// T over classes straight from the definition: per-class attachment counts
// divided by class sizes, normalized to sum one.
inline std::map<std::uint32_t, double> naive_rates(const std::vector<std::uint32_t>& class_of,
                                                   const std::vector<pagrowth::NodeId>& members,
                                                   const std::vector<pagrowth::NodeId>& targets) {
  std::map<std::uint32_t, double> size, hits;
  for (auto v : members) size[class_of[v]] += 1.0;
  for (auto v : targets) hits[class_of[v]] += 1.0;
  std::map<std::uint32_t, double> rate;
  double total = 0.0;
  for (auto [c, s] : size) {
    rate[c] = hits[c] / s;
    total += rate[c];
  }
  for (auto& [c, r] : rate) r /= total;
  return rate;
}

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares through the closed-form normal equations in long
// double.
inline Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  long double n = x.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  const long double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {static_cast<double>(slope), static_cast<double>((sy - slope * sx) / n)};
}

}  // namespace oracle
