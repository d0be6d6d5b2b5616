#include "tnd/generators.hpp"

#include <algorithm>
#include <numeric>

namespace tnd {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("edge probability must lie in [0,1]");
}

}  // namespace

DynGraph graph_from_edges(std::size_t n, const std::vector<Pair>& edges) {
  DynGraph g(n);
  apply_delta(g, EdgeDelta{edges, {}});
  return g;
}

DynGraph gnp(std::size_t n, double p, Rng& rng) {
  check_probability(p);
  std::bernoulli_distribution coin(p);
  std::vector<Pair> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return graph_from_edges(n, edges);
}

DynGraph cycle_graph(std::size_t n) {
  if (n < 3) throw ConfigError("a cycle needs at least 3 nodes");
  std::vector<Pair> edges;
  for (NodeId u = 0; u < n; ++u) edges.emplace_back(u, static_cast<NodeId>((u + 1) % n));
  return graph_from_edges(n, edges);
}

DynGraph path_graph(std::size_t n) {
  std::vector<Pair> edges;
  for (NodeId u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
  return graph_from_edges(n, edges);
}

DynGraph star_graph(std::size_t n) {
  std::vector<Pair> edges;
  for (NodeId u = 1; u < n; ++u) edges.emplace_back(0, u);
  return graph_from_edges(n, edges);
}

DynGraph complete_graph(std::size_t n) {
  std::vector<Pair> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return graph_from_edges(n, edges);
}

DynGraph random_connected(std::size_t n, double p, Rng& rng) {
  check_probability(p);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  DynGraph g(n);
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    g.add_edge(order[i], order[pick(rng)]);
  }
  std::bernoulli_distribution coin(p);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) g.add_edge(u, v);
    }
  }
  return g;
}

}  // namespace tnd
